//! Brute-force verifiers.
//!
//! Nothing here calls into [`crate::code`] predicates; the only shared
//! pieces are field arithmetic and the matrix kernel/RREF primitives.

use std::fmt;

use crate::caps::{binomial, saturating_pow, Caps};
use crate::code::LinearCode;
use crate::error::{Error, Result};
use crate::gf::{Felt, FieldSpec};
use crate::matrix::{Form, Mat};

/// Basis of `C ∩ C^⊥` (or the Hermitian hull), found by intersecting row
/// spaces explicitly.
///
/// With `G` generating `C` and `D` generating the dual, a pair `(x, y)`
/// with `x G = y D` is a left-kernel vector of `[G; -D]`; the hull is the set
/// of all such `x G`.
pub fn hull_basis_bruteforce(code: &LinearCode, form: Form) -> Result<Mat> {
    let f = code.field();
    let (n, k) = (code.n(), code.k());
    let g = code.generator();
    if k == 0 {
        return Ok(Mat::zeros(f, 0, n));
    }
    let against = match form {
        Form::Euclidean => g.clone(),
        Form::Hermitian => g.conj()?,
    };
    let dual = against.nullspace();
    if dual.rows() == 0 {
        return Ok(Mat::zeros(f, 0, n));
    }
    let stacked = Mat::vstack(&[g, &dual.neg()])?;
    let left_kernel = stacked.transpose().nullspace();
    let coeffs = left_kernel.column_block(0, k);
    let words = coeffs.mul(g)?;
    let (r, pivots) = words.rref();
    let rows: Vec<usize> = (0..pivots.len()).collect();
    Ok(r.select_rows(&rows))
}

/// Polynomial with coefficients in a field, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly(pub Vec<Felt>);

impl Poly {
    fn trimmed(mut v: Vec<Felt>) -> Poly {
        while v.last().is_some_and(|c| c.is_zero()) {
            v.pop();
        }
        Poly(v)
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn eval(&self, f: &FieldSpec, x: Felt) -> Felt {
        self.0.iter().rev().fold(Felt::ZERO, |acc, &c| f.add(f.mul(acc, x), c))
    }

    fn add(&self, f: &FieldSpec, o: &Poly) -> Poly {
        let n = self.0.len().max(o.0.len());
        Poly::trimmed(
            (0..n)
                .map(|i| {
                    let a = self.0.get(i).copied().unwrap_or_default();
                    let b = o.0.get(i).copied().unwrap_or_default();
                    f.add(a, b)
                })
                .collect(),
        )
    }

    fn mul(&self, f: &FieldSpec, o: &Poly) -> Poly {
        if self.0.is_empty() || o.0.is_empty() {
            return Poly(Vec::new());
        }
        let mut out = vec![Felt::ZERO; self.0.len() + o.0.len() - 1];
        for (i, &a) in self.0.iter().enumerate() {
            for (j, &b) in o.0.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Poly::trimmed(out)
    }

    fn scale(&self, f: &FieldSpec, c: Felt) -> Poly {
        Poly::trimmed(self.0.iter().map(|&a| f.mul(a, c)).collect())
    }

    /// Quotient by `(x - r)`, assuming `r` is a root.
    fn deflate(&self, f: &FieldSpec, r: Felt) -> Poly {
        let n = self.0.len();
        let mut out = vec![Felt::ZERO; n.saturating_sub(1)];
        let mut carry = Felt::ZERO;
        for i in (1..n).rev() {
            carry = f.add(self.0[i], f.mul(carry, r));
            out[i - 1] = carry;
        }
        Poly::trimmed(out)
    }
}

/// `det(xI - M)` by Laplace expansion over polynomial entries.
pub fn charpoly_cofactor(m: &Mat) -> Result<Poly> {
    if !m.is_square() {
        return Err(Error::NotSquare { rows: m.rows(), cols: m.cols() });
    }
    let f = m.field();
    let n = m.rows();
    let entry = |i: usize, j: usize| -> Poly {
        let c = f.neg(m[(i, j)]);
        if i == j {
            Poly::trimmed(vec![c, Felt::ONE])
        } else {
            Poly::trimmed(vec![c])
        }
    };
    fn expand(
        f: &FieldSpec,
        row: usize,
        cols: &mut Vec<usize>,
        entry: &dyn Fn(usize, usize) -> Poly,
    ) -> Poly {
        if cols.is_empty() {
            return Poly(vec![Felt::ONE]);
        }
        let mut acc = Poly(Vec::new());
        for idx in 0..cols.len() {
            let c = cols.remove(idx);
            let e = entry(row, c);
            if !e.0.is_empty() {
                let minor = expand(f, row + 1, cols, entry);
                let mut term = e.mul(f, &minor);
                if idx % 2 == 1 {
                    term = term.scale(f, f.neg_one());
                }
                acc = acc.add(f, &term);
            }
            cols.insert(idx, c);
        }
        acc
    }
    let mut cols: Vec<usize> = (0..n).collect();
    Ok(expand(f, 0, &mut cols, &entry))
}

/// `det(xI - M)` by Berkowitz's division-free algorithm.
pub fn charpoly_berkowitz(m: &Mat) -> Result<Poly> {
    if !m.is_square() {
        return Err(Error::NotSquare { rows: m.rows(), cols: m.cols() });
    }
    let f = m.field();
    let n = m.rows();
    if n == 0 {
        return Ok(Poly(vec![Felt::ONE]));
    }
    // Coefficients highest degree first.
    let mut vect = vec![Felt::ONE, f.neg(m[(n - 1, n - 1)])];
    for r in (0..n - 1).rev() {
        let s = n - r;
        // t = (1, -a_rr, -R C, -R A1 C, ..., -R A1^(s-2) C)
        let mut t = vec![Felt::ONE, f.neg(m[(r, r)])];
        let mut col: Vec<Felt> = (r + 1..n).map(|i| m[(i, r)]).collect();
        for _ in 0..s - 1 {
            let rc = f.sum((r + 1..n).zip(&col).map(|(j, &c)| f.mul(m[(r, j)], c)));
            t.push(f.neg(rc));
            col = (r + 1..n)
                .map(|i| f.sum((r + 1..n).zip(&col).map(|(j, &c)| f.mul(m[(i, j)], c))))
                .collect();
        }
        let mut next = vec![Felt::ZERO; s + 1];
        for (i, slot) in next.iter_mut().enumerate() {
            for (j, &v) in vect.iter().enumerate() {
                if i >= j {
                    *slot = f.add(*slot, f.mul(t[i - j], v));
                }
            }
        }
        vect = next;
    }
    vect.reverse();
    Ok(Poly::trimmed(vect))
}

/// Eigenvalues lying in the field, with algebraic multiplicities, in code order.
pub fn spectrum(m: &Mat) -> Result<Vec<(Felt, usize)>> {
    let f = m.field();
    let cap = Caps::global().field_order;
    if f.q() as u64 > cap {
        return Err(Error::cap("spectrum root scan", f.q() as u128, cap));
    }
    let mut poly = if m.rows() <= 6 { charpoly_cofactor(m)? } else { charpoly_berkowitz(m)? };
    let mut out = Vec::new();
    for x in f.elements() {
        let mut mult = 0;
        while poly.degree().is_some_and(|d| d > 0) && poly.eval(f, x).is_zero() {
            poly = poly.deflate(f, x);
            mult += 1;
        }
        if mult > 0 {
            out.push((x, mult));
        }
    }
    Ok(out)
}

/// Rank by forward elimination on a copy of the rows.
fn rank_of_columns(f: &FieldSpec, g: &Mat, cols: &[usize]) -> usize {
    let mut rows: Vec<Vec<Felt>> = (0..g.rows()).map(|i| cols.iter().map(|&c| g[(i, c)]).collect()).collect();
    let width = cols.len();
    let mut rank = 0;
    for c in (0..width).rev() {
        let Some(p) = (rank..rows.len()).rev().find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let inv = f.inv(rows[rank][c]).expect("nonzero pivot");
        for i in rank + 1..rows.len() {
            let factor = f.mul(rows[i][c], inv);
            if factor.is_zero() {
                continue;
            }
            for j in 0..width {
                let v = f.sub(rows[i][j], f.mul(factor, rows[rank][j]));
                rows[i][j] = v;
            }
        }
        rank += 1;
    }
    rank
}

/// Every k-subset of generator columns has full rank.
pub fn mds_exhaustive(code: &LinearCode, cap: u64) -> Result<bool> {
    let (n, k) = (code.n(), code.k());
    if k == 0 || k == n {
        return Ok(true);
    }
    let needed = binomial(n, k);
    if needed > cap as u128 {
        return Err(Error::cap("oracle MDS column subsets", needed, cap));
    }
    let f = code.field();
    let g = code.generator();
    // Recursive subset walk, distinct from the iterative enumeration in `code`.
    fn walk(f: &FieldSpec, g: &Mat, start: usize, chosen: &mut Vec<usize>, k: usize) -> bool {
        if chosen.len() == k {
            return rank_of_columns(f, g, chosen) == k;
        }
        let n = g.cols();
        for c in start..=n - (k - chosen.len()) {
            chosen.push(c);
            let ok = walk(f, g, c + 1, chosen, k);
            chosen.pop();
            if !ok {
                return false;
            }
        }
        true
    }
    Ok(walk(f, g, 0, &mut Vec::with_capacity(k), k))
}

/// Minimum weight over all `q^k - 1` nonzero codewords. The zero code gives `n + 1`.
pub fn distance_exhaustive(code: &LinearCode, cap: u64) -> Result<usize> {
    let (n, k) = (code.n(), code.k());
    if k == 0 {
        return Ok(n + 1);
    }
    let f = code.field();
    let q = f.q();
    let needed = saturating_pow(q as u64, k);
    if needed > cap as u128 {
        return Err(Error::cap("oracle codewords", needed, cap));
    }
    let g = code.generator();
    // `word` tracks msg * G; each digit change adds (new - old) * row.
    let mut msg = vec![0u32; k];
    let mut word = vec![Felt::ZERO; n];
    let mut best = n + 1;
    let bump = |word: &mut [Felt], i: usize, from: u32, to: u32| {
        let delta = f.sub(Felt(to), Felt(from));
        for (w, &x) in word.iter_mut().zip(g.row(i)) {
            *w = f.add(*w, f.mul(delta, x));
        }
    };
    'outer: loop {
        let mut i = k;
        loop {
            if i == 0 {
                break 'outer;
            }
            i -= 1;
            let old = msg[i];
            if old + 1 < q {
                msg[i] = old + 1;
                bump(&mut word, i, old, old + 1);
                break;
            }
            msg[i] = 0;
            bump(&mut word, i, old, 0);
        }
        let w = word.iter().filter(|x| !x.is_zero()).count();
        best = best.min(w);
    }
    Ok(best)
}

/// Result of enumerating every systematic generator `[I_k : P]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExhaustionCertificate {
    pub q: u32,
    pub n: usize,
    pub k: usize,
    /// Candidates examined before stopping.
    pub tested: u128,
    /// Size of the full candidate space, `q^(k(n-k))`.
    pub space: u128,
    /// First candidate satisfying the predicate, in enumeration order.
    pub hit: Option<LinearCode>,
    pub predicate: String,
}

impl ExhaustionCertificate {
    /// No hit and the whole space was examined.
    pub fn is_complete_exhaustion(&self) -> bool {
        self.hit.is_none() && self.tested == self.space
    }
}

impl fmt::Display for ExhaustionCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.hit {
            Some(_) => write!(
                f,
                "[{},{}] over GF({}): {} hit after {} of {} systematic candidates",
                self.n, self.k, self.q, self.predicate, self.tested, self.space
            ),
            None => write!(
                f,
                "[{},{}] over GF({}): no {} code among {} of {} systematic candidates",
                self.n, self.k, self.q, self.predicate, self.tested, self.space
            ),
        }
    }
}

/// Predicate for [`exhaustive_nonexistence`], evaluated by the oracle's own
/// routines.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchTarget {
    LcdMds,
    HermitianLcdMds,
}

impl SearchTarget {
    pub fn form(self) -> Form {
        match self {
            SearchTarget::LcdMds => Form::Euclidean,
            SearchTarget::HermitianLcdMds => Form::Hermitian,
        }
    }

    fn name(self) -> &'static str {
        match self {
            SearchTarget::LcdMds => "LCD MDS",
            SearchTarget::HermitianLcdMds => "Hermitian LCD MDS",
        }
    }
}

/// Hull is trivial, tested by explicit intersection.
fn oracle_lcd(code: &LinearCode, form: Form) -> Result<bool> {
    Ok(hull_basis_bruteforce(code, form)?.rows() == 0)
}

/// Square Gram determinant test written against the raw rows, used as the
/// cheap pre-filter inside the exhaustive search.
fn gram_nonsingular(f: &FieldSpec, g: &Mat, form: Form) -> Result<bool> {
    let k = g.rows();
    let other = match form {
        Form::Euclidean => g.clone(),
        Form::Hermitian => g.conj()?,
    };
    let gram: Vec<Felt> = (0..k)
        .flat_map(|i| {
            let other = &other;
            (0..k).map(move |j| f.sum(g.row(i).iter().zip(other.row(j)).map(|(&a, &b)| f.mul(a, b))))
        })
        .collect();
    let cols: Vec<usize> = (0..k).collect();
    Ok(rank_of_columns(f, &Mat::from_vec(f, k, k, gram)?, &cols) == k)
}

/// Enumerates every `[I_k : P]`, `P` in row-major lexicographic code order,
/// stopping at the first code meeting `target`.
///
/// Every code is equivalent under a column permutation to a systematic one,
/// and both the LCD property and the MDS property are invariant under column
/// permutations, so a complete run with no hit proves nonexistence.
pub fn exhaustive_nonexistence(
    field: &FieldSpec,
    n: usize,
    k: usize,
    target: SearchTarget,
    cap: u64,
) -> Result<ExhaustionCertificate> {
    if k > n || n == 0 {
        return Err(Error::InvalidArgument(format!("no [{n},{k}] codes")));
    }
    if target == SearchTarget::HermitianLcdMds {
        field.require_square()?;
    }
    let q = field.q();
    let cells = k * (n - k);
    let space = saturating_pow(q as u64, cells);
    if space > cap as u128 {
        return Err(Error::cap("systematic candidates", space, cap));
    }
    let form = target.form();
    let ident = Mat::identity(field, k);
    let mut digits = vec![Felt::ZERO; cells];
    let mut tested: u128 = 0;
    loop {
        tested += 1;
        let p = Mat::from_vec(field, k, n - k, digits.clone())?;
        let g = Mat::hstack(&[&ident, &p])?;
        if k == 0 || gram_nonsingular(field, &g, form)? {
            let code = LinearCode::new(g)?;
            if mds_exhaustive(&code, u64::MAX)? && oracle_lcd(&code, form)? {
                return Ok(ExhaustionCertificate {
                    q,
                    n,
                    k,
                    tested,
                    space,
                    hit: Some(code),
                    predicate: target.name().into(),
                });
            }
        }
        if !crate::code::increment_tail(&mut digits, q) {
            break;
        }
    }
    Ok(ExhaustionCertificate { q, n, k, tested, space, hit: None, predicate: target.name().into() })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u32, m: u32) -> FieldSpec {
        FieldSpec::new(p, m).unwrap()
    }

    fn code(f: &FieldSpec, rows: &[Vec<u32>]) -> LinearCode {
        LinearCode::new(Mat::from_rows(f, rows).unwrap()).unwrap()
    }

    #[test]
    fn hull_examples() {
        let f5 = gf(5, 1);
        let c = code(&f5, &[vec![1, 0, 1, 1], vec![0, 1, 1, 4]]);
        assert_eq!(hull_basis_bruteforce(&c, Form::Euclidean).unwrap().rows(), 0);
        let f2 = gf(2, 1);
        let c = code(&f2, &[vec![1, 1, 1, 1]]);
        assert_eq!(hull_basis_bruteforce(&c, Form::Euclidean).unwrap().to_codes(), vec![vec![1, 1, 1, 1]]);
        let full = LinearCode::full(&gf(3, 1), 2);
        assert_eq!(hull_basis_bruteforce(&full, Form::Euclidean).unwrap().rows(), 0);
        let f4 = gf(2, 2);
        let c = code(&f4, &[vec![1, 2]]);
        assert_eq!(hull_basis_bruteforce(&c, Form::Hermitian).unwrap().rows(), 1);
    }

    #[test]
    fn spectrum_examples() {
        let f5 = gf(5, 1);
        let m = Mat::from_rows(&f5, &[vec![3, 0], vec![0, 3]]).unwrap();
        assert_eq!(spectrum(&m).unwrap(), vec![(Felt(3), 2)]);
        let f2 = gf(2, 1);
        let m = Mat::from_rows(&f2, &[vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(spectrum(&m).unwrap(), vec![(Felt(1), 2)]);
        let m = Mat::from_ints(&f5, &[vec![0, 1], vec![-1, 0]]).unwrap();
        assert_eq!(spectrum(&m).unwrap(), vec![(Felt(2), 1), (Felt(3), 1)]);
    }

    #[test]
    fn charpoly_routes_agree() {
        let f = gf(7, 1);
        for seed in 0..40u32 {
            let n = (seed % 6 + 1) as usize;
            let m = Mat::from_fn(&f, n, n, |i, j| Felt((seed * 31 + (i * 7 + j * 3) as u32 * (seed + 1)) % 7));
            let a = charpoly_cofactor(&m).unwrap();
            let b = charpoly_berkowitz(&m).unwrap();
            assert_eq!(a, b);
            assert_eq!(a.degree(), Some(n));
            // constant term is det(-M)
            let det = m.neg().det().unwrap();
            assert_eq!(a.0[0], det);
        }
    }

    #[test]
    fn spectrum_matches_determinant_scan() {
        let f = gf(3, 2);
        for seed in 0..30u32 {
            let n = (seed % 8 + 1) as usize;
            let m = Mat::from_fn(&f, n, n, |i, j| Felt((seed * 5 + (i * i + 3 * j) as u32 * (seed % 7 + 1)) % 9));
            let roots: Vec<Felt> = spectrum(&m).unwrap().into_iter().map(|(x, _)| x).collect();
            let scan: Vec<Felt> = f
                .elements()
                .filter(|&x| m.add(&Mat::identity(&f, n).scale(f.neg(x))).unwrap().det().unwrap().is_zero())
                .collect();
            assert_eq!(roots, scan);
        }
    }

    #[test]
    fn exhaustive_checks() {
        let f5 = gf(5, 1);
        let c = code(&f5, &[vec![1, 0, 1, 1], vec![0, 1, 1, 4]]);
        assert!(mds_exhaustive(&c, 100).unwrap());
        assert_eq!(distance_exhaustive(&c, 100).unwrap(), 3);
        let c = code(&gf(2, 1), &[vec![1, 1, 0]]);
        assert!(!mds_exhaustive(&c, 100).unwrap());
        assert_eq!(distance_exhaustive(&c, 100).unwrap(), 2);
        let id = LinearCode::full(&gf(7, 1), 2);
        assert!(mds_exhaustive(&id, 100).unwrap());
        assert_eq!(distance_exhaustive(&id, 100).unwrap(), 1);
        assert!(distance_exhaustive(&id, 10).is_err());
    }

    #[test]
    fn nonexistence_examples() {
        let cert = exhaustive_nonexistence(&gf(3, 1), 4, 2, SearchTarget::LcdMds, 1000).unwrap();
        assert!(cert.is_complete_exhaustion());
        assert_eq!(cert.tested, 81);
        let cert = exhaustive_nonexistence(&gf(2, 1), 2, 1, SearchTarget::LcdMds, 1000).unwrap();
        assert!(cert.is_complete_exhaustion());
        assert_eq!(cert.tested, 2);
        let cert = exhaustive_nonexistence(&gf(5, 1), 4, 2, SearchTarget::LcdMds, 1000).unwrap();
        assert!(cert.hit.is_some());
        assert!(exhaustive_nonexistence(&gf(5, 1), 6, 3, SearchTarget::LcdMds, 1000).is_err());
    }
}
