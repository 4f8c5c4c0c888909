//! Linear codes and their duality, hull and MDS properties.

use std::fmt;

use crate::caps::{binomial, saturating_pow, Caps};
use crate::error::{Error, Result};
use crate::gf::{Felt, FieldSpec};
use crate::matrix::{Form, Mat};

/// An `[n, k]` linear code given by a full-row-rank `k x n` generator.
///
/// The zero code (`k = 0`) is represented by an empty generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearCode {
    gen: Mat,
}

/// Outcome of an MDS test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MdsReport {
    pub mds: bool,
    /// A dependent set of `k` generator columns when not MDS.
    pub witness: Option<Vec<usize>>,
}

/// Minimum distance with a codeword of that weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Distance {
    pub d: usize,
    /// `None` only for the zero code.
    pub witness: Option<Vec<Felt>>,
}

impl LinearCode {
    pub fn new(gen: Mat) -> Result<Self> {
        if gen.cols() == 0 {
            return Err(Error::InvalidArgument("code length must be at least 1".into()));
        }
        let rank = gen.rank();
        if rank < gen.rows() {
            return Err(Error::RankDeficient { rank, rows: gen.rows() });
        }
        Ok(LinearCode { gen })
    }

    pub fn zero(field: &FieldSpec, n: usize) -> Self {
        LinearCode { gen: Mat::zeros(field, 0, n) }
    }

    pub fn full(field: &FieldSpec, n: usize) -> Self {
        LinearCode { gen: Mat::identity(field, n) }
    }

    /// Code spanned by the rows of `m`, which may be dependent.
    pub fn span(m: &Mat) -> Self {
        let (r, pivots) = m.rref();
        let rows: Vec<usize> = (0..pivots.len()).collect();
        LinearCode { gen: r.select_rows(&rows) }
    }

    pub fn field(&self) -> &FieldSpec {
        self.gen.field()
    }

    pub fn generator(&self) -> &Mat {
        &self.gen
    }

    pub fn n(&self) -> usize {
        self.gen.cols()
    }

    pub fn k(&self) -> usize {
        self.gen.rows()
    }

    pub fn encode(&self, msg: &[Felt]) -> Vec<Felt> {
        let f = self.field();
        let mut out = vec![Felt::ZERO; self.n()];
        for (i, &m) in msg.iter().enumerate() {
            if m.is_zero() {
                continue;
            }
            for (o, &g) in out.iter_mut().zip(self.gen.row(i)) {
                *o = f.add(*o, f.mul(m, g));
            }
        }
        out
    }

    /// Euclidean dual, computed as the right kernel of the generator.
    pub fn dual(&self) -> LinearCode {
        if self.k() == 0 {
            return LinearCode::full(self.field(), self.n());
        }
        LinearCode { gen: self.gen.nullspace() }
    }

    /// Hermitian dual, the right kernel of the conjugated generator.
    pub fn hermitian_dual(&self) -> Result<LinearCode> {
        self.field().require_square()?;
        if self.k() == 0 {
            return Ok(LinearCode::full(self.field(), self.n()));
        }
        Ok(LinearCode { gen: self.gen.conj()?.nullspace() })
    }

    pub fn dual_in(&self, form: Form) -> Result<LinearCode> {
        match form {
            Form::Euclidean => Ok(self.dual()),
            Form::Hermitian => self.hermitian_dual(),
        }
    }

    pub fn gram(&self, form: Form) -> Result<Mat> {
        self.gen.gram(form)
    }

    pub fn is_lcd_in(&self, form: Form) -> Result<bool> {
        let gram = self.gram(form)?;
        if self.k() == 0 || self.k() == self.n() {
            return Ok(true);
        }
        Ok(!gram.det()?.is_zero())
    }

    pub fn is_lcd(&self) -> bool {
        self.is_lcd_in(Form::Euclidean).expect("euclidean form is always defined")
    }

    pub fn is_hermitian_lcd(&self) -> Result<bool> {
        self.is_lcd_in(Form::Hermitian)
    }

    pub fn is_self_orthogonal(&self, form: Form) -> Result<bool> {
        Ok(self.gram(form)?.is_zero())
    }

    pub fn is_self_dual(&self, form: Form) -> Result<bool> {
        Ok(self.is_self_orthogonal(form)? && 2 * self.k() == self.n())
    }

    /// `k - rank(Gram)`, the dimension of the (Hermitian) hull.
    pub fn hull_dim(&self, form: Form) -> Result<usize> {
        Ok(self.k() - self.gram(form)?.rank())
    }

    /// MDS test under the global subset cap.
    pub fn is_mds(&self) -> Result<MdsReport> {
        self.is_mds_with_cap(Caps::global().subsets)
    }

    /// Tests every k-subset of columns, working on whichever of the code and
    /// its dual has the smaller square blocks. The witness is always a
    /// dependent k-subset of this code's generator columns.
    pub fn is_mds_with_cap(&self, cap: u64) -> Result<MdsReport> {
        let (n, k) = (self.n(), self.k());
        if k == 0 || k == n {
            return Ok(MdsReport { mds: true, witness: None });
        }
        let needed = binomial(n, k);
        if needed > cap as u128 {
            return Err(Error::cap("MDS column subsets", needed, cap));
        }
        let (mat, side) = if k <= n - k {
            (self.gen.clone(), k)
        } else {
            (self.dual().gen, n - k)
        };
        let mut subset: Vec<usize> = (0..side).collect();
        loop {
            if mat.select_columns(&subset).det()?.is_zero() {
                let witness = if side == k {
                    subset
                } else {
                    (0..n).filter(|c| !subset.contains(c)).collect()
                };
                return Ok(MdsReport { mds: false, witness: Some(witness) });
            }
            if !next_combination(&mut subset, n) {
                break;
            }
        }
        Ok(MdsReport { mds: true, witness: None })
    }

    /// Exact minimum distance by enumerating one message per projective class
    /// (first nonzero coordinate equal to one). Ties go to the
    /// lexicographically first message. The zero code reports `n + 1`.
    pub fn min_distance(&self, cap: u64) -> Result<Distance> {
        let (n, k) = (self.n(), self.k());
        if k == 0 {
            return Ok(Distance { d: n + 1, witness: None });
        }
        let q = self.field().q() as u64;
        let needed = (saturating_pow(q, k) - 1) / (q as u128 - 1);
        if needed > cap as u128 {
            return Err(Error::cap("projective messages", needed, cap));
        }
        let mut best: Option<(usize, Vec<Felt>)> = None;
        let mut msg = vec![Felt::ZERO; k];
        'lead: for lead in (0..k).rev() {
            msg.iter_mut().for_each(|m| *m = Felt::ZERO);
            msg[lead] = Felt::ONE;
            loop {
                let word = self.encode(&msg);
                let w = weight(&word);
                if best.as_ref().is_none_or(|(bw, _)| w < *bw) {
                    best = Some((w, word));
                    if w == 1 {
                        break 'lead;
                    }
                }
                if !increment_tail(&mut msg[lead + 1..], q as u32) {
                    break;
                }
            }
        }
        let (d, word) = best.expect("k >= 1 gives a nonzero codeword");
        Ok(Distance { d, witness: Some(word) })
    }
}

impl fmt::Display for LinearCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[{}, {}] code over {}", self.n(), self.k(), self.field())?;
        write!(f, "{}", self.gen)
    }
}

pub(crate) fn weight(word: &[Felt]) -> usize {
    word.iter().filter(|x| !x.is_zero()).count()
}

/// Advances a lexicographic counter over `[0, q)^len`; false on wrap-around.
pub(crate) fn increment_tail(digits: &mut [Felt], q: u32) -> bool {
    for d in digits.iter_mut().rev() {
        if d.0 + 1 < q {
            d.0 += 1;
            return true;
        }
        d.0 = 0;
    }
    false
}

/// Next k-combination of `0..n` in lexicographic order; false when done.
pub(crate) fn next_combination(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if c[i] < n - k + i {
            c[i] += 1;
            for j in i + 1..k {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// What [`certify`] should compute.
#[derive(Clone, Debug)]
pub struct CertifyOptions {
    /// Compute the minimum distance.
    pub distance: bool,
    pub distance_cap: u64,
    pub mds_cap: u64,
    pub provenance: Option<String>,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        let caps = Caps::global();
        CertifyOptions {
            distance: true,
            distance_cap: caps.codewords,
            mds_cap: caps.subsets,
            provenance: None,
        }
    }
}

impl CertifyOptions {
    /// Flags only, no distance.
    pub fn structural() -> Self {
        CertifyOptions { distance: false, ..Default::default() }
    }

    pub fn with_provenance(mut self, p: impl Into<String>) -> Self {
        self.provenance = Some(p.into());
        self
    }
}

/// Verified property bundle of a code.
///
/// Hermitian fields are `None` over fields of odd extension degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub q: u32,
    pub n: usize,
    pub k: usize,
    pub d: Option<usize>,
    pub mds: bool,
    pub lcd: bool,
    pub hermitian_lcd: Option<bool>,
    pub self_orthogonal: bool,
    pub hermitian_self_orthogonal: Option<bool>,
    pub self_dual: bool,
    pub hermitian_self_dual: Option<bool>,
    pub hull_dim: usize,
    pub hermitian_hull_dim: Option<usize>,
    pub min_weight_word: Option<Vec<Felt>>,
    pub dependent_columns: Option<Vec<usize>>,
    pub provenance: Option<String>,
}

impl Certificate {
    pub fn is_lcd_in(&self, form: Form) -> bool {
        match form {
            Form::Euclidean => self.lcd,
            Form::Hermitian => self.hermitian_lcd == Some(true),
        }
    }
}

pub fn certify(code: &LinearCode, opts: &CertifyOptions) -> Result<Certificate> {
    let (n, k) = (code.n(), code.k());
    let mds = code.is_mds_with_cap(opts.mds_cap)?;
    let hull_dim = code.hull_dim(Form::Euclidean)?;
    let self_orthogonal = code.is_self_orthogonal(Form::Euclidean)?;
    let herm = if code.field().is_square_extension() {
        Some((
            code.hull_dim(Form::Hermitian)?,
            code.is_self_orthogonal(Form::Hermitian)?,
            code.is_hermitian_lcd()?,
        ))
    } else {
        None
    };
    let dist = if opts.distance { Some(code.min_distance(opts.distance_cap)?) } else { None };
    Ok(Certificate {
        q: code.field().q(),
        n,
        k,
        d: dist.as_ref().map(|d| d.d),
        mds: mds.mds,
        lcd: code.is_lcd(),
        hermitian_lcd: herm.map(|h| h.2),
        self_orthogonal,
        hermitian_self_orthogonal: herm.map(|h| h.1),
        self_dual: self_orthogonal && 2 * k == n,
        hermitian_self_dual: herm.map(|h| h.1 && 2 * k == n),
        hull_dim,
        hermitian_hull_dim: herm.map(|h| h.0),
        min_weight_word: dist.and_then(|d| d.witness),
        dependent_columns: mds.witness,
        provenance: opts.provenance.clone(),
    })
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let opt = |b: Option<bool>| b.map_or("n/a".to_string(), |b| b.to_string());
        writeln!(f, "parameters q={} n={} k={}", self.q, self.n, self.k)?;
        match self.d {
            Some(d) => writeln!(f, "d {d}")?,
            None => writeln!(f, "d not computed")?,
        }
        writeln!(f, "mds {}", self.mds)?;
        writeln!(f, "lcd {}", self.lcd)?;
        writeln!(f, "hermitian_lcd {}", opt(self.hermitian_lcd))?;
        writeln!(f, "self_orthogonal {}", self.self_orthogonal)?;
        writeln!(f, "hermitian_self_orthogonal {}", opt(self.hermitian_self_orthogonal))?;
        writeln!(f, "self_dual {}", self.self_dual)?;
        writeln!(f, "hermitian_self_dual {}", opt(self.hermitian_self_dual))?;
        writeln!(f, "hull_dim {}", self.hull_dim)?;
        match self.hermitian_hull_dim {
            Some(h) => writeln!(f, "hermitian_hull_dim {h}")?,
            None => writeln!(f, "hermitian_hull_dim n/a")?,
        }
        if let Some(w) = &self.min_weight_word {
            let s: Vec<String> = w.iter().map(|x| x.0.to_string()).collect();
            writeln!(f, "min_weight_word {}", s.join(" "))?;
        }
        if let Some(c) = &self.dependent_columns {
            let s: Vec<String> = c.iter().map(|x| x.to_string()).collect();
            writeln!(f, "dependent_columns {}", s.join(" "))?;
        }
        if let Some(p) = &self.provenance {
            writeln!(f, "provenance {p}")?;
        }
        Ok(())
    }
}
