//! Dense exact linear algebra over a [`FieldSpec`].

use std::fmt;
use std::ops::Index;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::gf::{Felt, FieldSpec};

/// Which bilinear (or sesquilinear) form a Gram matrix, dual or hull refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Form {
    Euclidean,
    Hermitian,
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Form::Euclidean => "euclidean",
            Form::Hermitian => "hermitian",
        })
    }
}

impl FromStr for Form {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "euclidean" | "e" => Ok(Form::Euclidean),
            "hermitian" | "h" => Ok(Form::Hermitian),
            other => Err(Error::InvalidArgument(format!("unknown form `{other}`"))),
        }
    }
}

/// Row-major dense matrix over a finite field.
#[derive(Clone, PartialEq, Eq)]
pub struct Mat {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    data: Vec<Felt>,
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Mat<{}>{:?}", self.field, self.to_codes())
    }
}

impl fmt::Display for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.0.to_string()).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

impl Index<(usize, usize)> for Mat {
    type Output = Felt;

    fn index(&self, (i, j): (usize, usize)) -> &Felt {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of {}x{}", self.rows, self.cols);
        &self.data[i * self.cols + j]
    }
}

impl Mat {
    pub fn zeros(field: &FieldSpec, rows: usize, cols: usize) -> Self {
        Mat { field: field.clone(), rows, cols, data: vec![Felt::ZERO; rows * cols] }
    }

    pub fn identity(field: &FieldSpec, k: usize) -> Self {
        Self::from_fn(field, k, k, |i, j| if i == j { Felt::ONE } else { Felt::ZERO })
    }

    /// The k x 1 column with a one in row `i`.
    pub fn unit_column(field: &FieldSpec, k: usize, i: usize) -> Self {
        assert!(i < k);
        Self::from_fn(field, k, 1, |r, _| if r == i { Felt::ONE } else { Felt::ZERO })
    }

    pub fn from_fn(
        field: &FieldSpec,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Felt,
    ) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Mat { field: field.clone(), rows, cols, data }
    }

    /// Builds from flat row-major data.
    pub fn from_vec(field: &FieldSpec, rows: usize, cols: usize, data: Vec<Felt>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if let Some(bad) = data.iter().find(|x| x.0 >= field.q()) {
            return Err(Error::InvalidArgument(format!("element code {} not below q={}", bad.0, field.q())));
        }
        Ok(Mat { field: field.clone(), rows, cols, data })
    }

    /// Builds from rows of element codes; all rows must have equal length.
    pub fn from_rows(field: &FieldSpec, rows: &[Vec<u32>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        let data = rows.iter().flatten().map(|&c| Felt(c)).collect();
        Self::from_vec(field, rows.len(), cols, data)
    }

    /// Rows of integers mapped into the prime subfield (so `-1` means `p-1`).
    pub fn from_ints(field: &FieldSpec, rows: &[Vec<i64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        let data = rows.iter().flatten().map(|&c| field.from_int(c)).collect();
        Self::from_vec(field, rows.len(), cols, data)
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, i: usize, j: usize) -> Felt {
        self[(i, j)]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Felt) {
        assert!(i < self.rows && j < self.cols);
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Felt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn data(&self) -> &[Felt] {
        &self.data
    }

    pub fn to_codes(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|i| self.row(i).iter().map(|x| x.0).collect()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    fn same_field(&self, other: &Mat) -> Result<()> {
        if self.field != other.field {
            return Err(Error::DimensionMismatch(format!(
                "operands over {} and {}",
                self.field, other.field
            )));
        }
        Ok(())
    }

    pub fn mul(&self, other: &Mat) -> Result<Mat> {
        self.same_field(other)?;
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = &self.field;
        Ok(Mat::from_fn(f, self.rows, other.cols, |i, j| {
            f.sum((0..self.cols).map(|t| f.mul(self[(i, t)], other[(t, j)])))
        }))
    }

    pub fn add(&self, other: &Mat) -> Result<Mat> {
        self.same_field(other)?;
        if self.shape() != other.shape() {
            return Err(Error::DimensionMismatch("addition of different shapes".into()));
        }
        let f = &self.field;
        Ok(Mat::from_fn(f, self.rows, self.cols, |i, j| f.add(self[(i, j)], other[(i, j)])))
    }

    pub fn transpose(&self) -> Mat {
        Mat::from_fn(&self.field, self.cols, self.rows, |i, j| self[(j, i)])
    }

    /// Entrywise conjugate `x -> x^(q0)`.
    pub fn conj(&self) -> Result<Mat> {
        self.field.require_square()?;
        let f = &self.field;
        Ok(Mat::from_fn(f, self.rows, self.cols, |i, j| {
            f.conjugate(self[(i, j)]).expect("square field checked")
        }))
    }

    pub fn conj_transpose(&self) -> Result<Mat> {
        Ok(self.conj()?.transpose())
    }

    pub fn scale(&self, c: Felt) -> Mat {
        let f = &self.field;
        Mat::from_fn(f, self.rows, self.cols, |i, j| f.mul(c, self[(i, j)]))
    }

    pub fn neg(&self) -> Mat {
        let f = &self.field;
        Mat::from_fn(f, self.rows, self.cols, |i, j| f.neg(self[(i, j)]))
    }

    /// Horizontal concatenation.
    pub fn hstack(blocks: &[&Mat]) -> Result<Mat> {
        let first = blocks
            .first()
            .ok_or_else(|| Error::DimensionMismatch("hstack of nothing".into()))?;
        let rows = first.rows;
        for b in blocks {
            first.same_field(b)?;
            if b.rows != rows {
                return Err(Error::DimensionMismatch(format!("hstack rows {} vs {rows}", b.rows)));
            }
        }
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for b in blocks {
                data.extend_from_slice(b.row(i));
            }
        }
        Ok(Mat { field: first.field.clone(), rows, cols, data })
    }

    /// Vertical concatenation.
    pub fn vstack(blocks: &[&Mat]) -> Result<Mat> {
        let first = blocks
            .first()
            .ok_or_else(|| Error::DimensionMismatch("vstack of nothing".into()))?;
        let cols = first.cols;
        let mut data = Vec::new();
        for b in blocks {
            first.same_field(b)?;
            if b.cols != cols {
                return Err(Error::DimensionMismatch(format!("vstack cols {} vs {cols}", b.cols)));
            }
            data.extend_from_slice(&b.data);
        }
        let rows = blocks.iter().map(|b| b.rows).sum();
        Ok(Mat { field: first.field.clone(), rows, cols, data })
    }

    pub fn select_columns(&self, cols: &[usize]) -> Mat {
        Mat::from_fn(&self.field, self.rows, cols.len(), |i, j| self[(i, cols[j])])
    }

    pub fn select_rows(&self, rows: &[usize]) -> Mat {
        Mat::from_fn(&self.field, rows.len(), self.cols, |i, j| self[(rows[i], j)])
    }

    /// Columns `start..end`.
    pub fn column_block(&self, start: usize, end: usize) -> Mat {
        let cols: Vec<usize> = (start..end).collect();
        self.select_columns(&cols)
    }

    /// `G G^T` or `G conj(G)^T`.
    pub fn gram(&self, form: Form) -> Result<Mat> {
        let other = match form {
            Form::Euclidean => self.clone(),
            Form::Hermitian => self.conj()?,
        };
        let f = &self.field;
        Ok(Mat::from_fn(f, self.rows, self.rows, |i, j| {
            f.sum(self.row(i).iter().zip(other.row(j)).map(|(&a, &b)| f.mul(a, b)))
        }))
    }

    /// Reduced row echelon form and pivot columns.
    ///
    /// Columns are scanned left to right; the pivot of each column is the
    /// first nonzero entry at or below the current pivot row.
    pub fn rref(&self) -> (Mat, Vec<usize>) {
        let f = &self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(r, pr);
            let inv = f.inv(m[(r, c)]).expect("pivot is nonzero");
            for j in c..m.cols {
                let v = f.mul(inv, m[(r, j)]);
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let factor = m[(i, c)];
                if factor.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let v = f.sub(m[(i, j)], f.mul(factor, m[(r, j)]));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    pub fn det(&self) -> Result<Felt> {
        if !self.is_square() {
            return Err(Error::NotSquare { rows: self.rows, cols: self.cols });
        }
        let f = &self.field;
        let n = self.rows;
        let mut m = self.clone();
        let mut det = Felt::ONE;
        for c in 0..n {
            let Some(pr) = (c..n).find(|&i| !m[(i, c)].is_zero()) else {
                return Ok(Felt::ZERO);
            };
            if pr != c {
                m.swap_rows(c, pr);
                det = f.neg(det);
            }
            let piv = m[(c, c)];
            det = f.mul(det, piv);
            let inv = f.inv(piv).expect("pivot is nonzero");
            for i in c + 1..n {
                let factor = f.mul(m[(i, c)], inv);
                if factor.is_zero() {
                    continue;
                }
                for j in c..n {
                    let v = f.sub(m[(i, j)], f.mul(factor, m[(c, j)]));
                    m.set(i, j, v);
                }
            }
        }
        Ok(det)
    }

    /// Basis of the right kernel `{x : A x = 0}`, one vector per row.
    ///
    /// Rows follow the free columns in increasing order; the free coordinate
    /// is one and the pivot coordinates are read off the RREF.
    pub fn nullspace(&self) -> Mat {
        let f = &self.field;
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = Mat::zeros(f, free.len(), self.cols);
        for (row, &fc) in free.iter().enumerate() {
            out.set(row, fc, Felt::ONE);
            for (pi, &pc) in pivots.iter().enumerate() {
                out.set(row, pc, f.neg(r[(pi, fc)]));
            }
        }
        out
    }

    /// Systematic form `[I_k : P]` of a full-row-rank matrix.
    ///
    /// Returns `P` and the column order `perm` such that the columns
    /// `perm[0], perm[1], ...` of this matrix span the same row space as
    /// `[I_k : P]`. `perm` is the identity whenever the first `k` columns are
    /// independent.
    pub fn systematic_form(&self) -> Result<(Mat, Vec<usize>)> {
        let (r, pivots) = self.rref();
        if pivots.len() < self.rows {
            return Err(Error::RankDeficient { rank: pivots.len(), rows: self.rows });
        }
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let p = r.select_columns(&free);
        let mut perm = pivots;
        perm.extend(free);
        Ok((p, perm))
    }

    /// Reorders columns so that new column `j` is old column `perm[j]`.
    pub fn permute_columns(&self, perm: &[usize]) -> Mat {
        self.select_columns(perm)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn gf(p: u32, m: u32) -> FieldSpec {
        FieldSpec::new(p, m).unwrap()
    }

    fn m(f: &FieldSpec, rows: &[Vec<u32>]) -> Mat {
        Mat::from_rows(f, rows).unwrap()
    }

    #[test]
    fn identity_and_shapes() {
        let f = gf(5, 1);
        let a = m(&f, &[vec![1, 2, 3], vec![4, 0, 2]]);
        assert_eq!(Mat::identity(&f, 2).mul(&a).unwrap(), a);
        let p = m(&f, &[vec![1, 2, 3], vec![4, 0, 2]]);
        let g = Mat::hstack(&[&Mat::identity(&f, 2), &p]).unwrap();
        assert_eq!(g.shape(), (2, 5));
        assert_eq!(Mat::unit_column(&f, 3, 2).to_codes(), vec![vec![0], vec![0], vec![1]]);
        assert!(matches!(a.mul(&a), Err(Error::DimensionMismatch(_))));
        let col = Mat::zeros(&f, 3, 1);
        assert!(Mat::hstack(&[&a, &col]).is_err());
    }

    #[test]
    fn conjugate_transpose() {
        let f = gf(3, 2);
        let g = f.gamma();
        let a = Mat::from_vec(&f, 1, 1, vec![g]).unwrap();
        assert_eq!(a.conj_transpose().unwrap()[(0, 0)], f.pow(g, 3));
        let e = Mat::identity(&gf(5, 1), 2);
        assert!(matches!(e.conj_transpose(), Err(Error::NotASquareField { .. })));
        assert!(e.gram(Form::Hermitian).is_err());
    }

    #[test]
    fn gram_examples() {
        let f5 = gf(5, 1);
        let g = m(&f5, &[vec![1, 0, 1, 1], vec![0, 1, 1, 4]]);
        assert_eq!(g.gram(Form::Euclidean).unwrap().to_codes(), vec![vec![3, 0], vec![0, 3]]);
        let f3 = gf(3, 1);
        assert_eq!(m(&f3, &[vec![1, 1, 1, 1]]).gram(Form::Euclidean).unwrap().to_codes(), vec![vec![1]]);
        let f4 = gf(2, 2);
        assert_eq!(m(&f4, &[vec![1, 2]]).gram(Form::Hermitian).unwrap().to_codes(), vec![vec![0]]);
    }

    #[test]
    fn elimination_examples() {
        let f5 = gf(5, 1);
        assert_eq!(m(&f5, &[vec![3, 0], vec![0, 3]]).det().unwrap(), Felt(4));
        assert_eq!(Mat::zeros(&f5, 2, 3).rank(), 0);
        let f2 = gf(2, 1);
        assert_eq!(m(&f2, &[vec![1, 1]]).nullspace().to_codes(), vec![vec![1, 1]]);
        assert!(matches!(Mat::zeros(&f5, 2, 3).det(), Err(Error::NotSquare { .. })));
        // swap sign
        assert_eq!(m(&f5, &[vec![0, 1], vec![1, 0]]).det().unwrap(), Felt(4));
    }

    #[test]
    fn systematic_examples() {
        let f7 = gf(7, 1);
        let g = m(&f7, &[vec![1, 1, 1, 1], vec![1, 6, 3, 4]]);
        let (p, perm) = g.systematic_form().unwrap();
        assert_eq!(p.to_codes(), vec![vec![2, 6], vec![6, 2]]);
        assert_eq!(perm, vec![0, 1, 2, 3]);

        let f5 = gf(5, 1);
        let p0 = m(&f5, &[vec![1, 2], vec![3, 4], vec![0, 1]]);
        let g = Mat::hstack(&[&Mat::identity(&f5, 3), &p0]).unwrap();
        let (p, perm) = g.systematic_form().unwrap();
        assert_eq!(p, p0);
        assert_eq!(perm, vec![0, 1, 2, 3, 4]);

        let dep = m(&f5, &[vec![1, 2, 3], vec![2, 4, 1]]);
        assert!(matches!(dep.systematic_form(), Err(Error::RankDeficient { .. })));
        let dep = m(&f5, &[vec![1, 2, 3], vec![2, 4, 6 % 5]]);
        assert!(matches!(dep.systematic_form(), Err(Error::RankDeficient { .. })));
    }

    #[test]
    fn systematic_with_permutation() {
        let f3 = gf(3, 1);
        let g = m(&f3, &[vec![1, 1, 0, 2], vec![2, 2, 1, 0]]);
        let (p, perm) = g.systematic_form().unwrap();
        assert_eq!(perm, vec![0, 2, 1, 3]);
        let sys = Mat::hstack(&[&Mat::identity(&f3, 2), &p]).unwrap();
        let permuted = g.permute_columns(&perm);
        let both = Mat::vstack(&[&sys, &permuted]).unwrap();
        assert_eq!(both.rank(), 2);
    }

    fn arb_field() -> impl Strategy<Value = FieldSpec> {
        prop_oneof![
            Just(gf(2, 1)),
            Just(gf(3, 1)),
            Just(gf(2, 2)),
            Just(gf(5, 1)),
            Just(gf(7, 1)),
            Just(gf(2, 3)),
            Just(gf(3, 2)),
            Just(gf(2, 4)),
            Just(gf(5, 2)),
        ]
    }

    fn arb_mat(rows: usize, cols: usize) -> impl Strategy<Value = Mat> {
        arb_field().prop_flat_map(move |f| {
            let q = f.q();
            prop::collection::vec(0..q, rows * cols)
                .prop_map(move |v| Mat::from_vec(&f, rows, cols, v.into_iter().map(Felt).collect()).unwrap())
        })
    }

    fn arb_square_pair() -> impl Strategy<Value = (Mat, Mat)> {
        (arb_field(), 1usize..=5).prop_flat_map(|(f, n)| {
            let q = f.q();
            let f2 = f.clone();
            (
                prop::collection::vec(0..q, n * n),
                prop::collection::vec(0..q, n * n),
            )
                .prop_map(move |(a, b)| {
                    let mk = |v: Vec<u32>| Mat::from_vec(&f2, n, n, v.into_iter().map(Felt).collect()).unwrap();
                    (mk(a), mk(b))
                })
        })
    }

    proptest! {
        #[test]
        fn det_is_multiplicative((a, b) in arb_square_pair()) {
            let f = a.field().clone();
            prop_assert_eq!(a.mul(&b).unwrap().det().unwrap(), f.mul(a.det().unwrap(), b.det().unwrap()));
        }

        #[test]
        fn rank_nullity(a in (1usize..5, 1usize..7).prop_flat_map(|(r, c)| arb_mat(r, c))) {
            let ns = a.nullspace();
            prop_assert_eq!(a.rank() + ns.rows(), a.cols());
            if ns.rows() > 0 {
                prop_assert!(a.mul(&ns.transpose()).unwrap().is_zero());
            }
        }

        #[test]
        fn gram_symmetries(g in (1usize..4, 1usize..7).prop_flat_map(|(r, c)| arb_mat(r, c))) {
            let e = g.gram(Form::Euclidean).unwrap();
            prop_assert_eq!(e.transpose(), e);
            if g.field().is_square_extension() {
                let h = g.gram(Form::Hermitian).unwrap();
                prop_assert_eq!(h.conj_transpose().unwrap(), h);
            }
        }

        #[test]
        fn gram_is_column_permutation_invariant(
            (g, perm) in (1usize..4, 2usize..7)
                .prop_flat_map(|(r, c)| (arb_mat(r, c), Just((0..c).collect::<Vec<_>>()).prop_shuffle()))
        ) {
            let pg = g.permute_columns(&perm);
            prop_assert_eq!(pg.gram(Form::Euclidean).unwrap(), g.gram(Form::Euclidean).unwrap());
            if g.field().is_square_extension() {
                prop_assert_eq!(pg.gram(Form::Hermitian).unwrap(), g.gram(Form::Hermitian).unwrap());
            }
        }

        #[test]
        fn systematic_form_spans_same_space(g in (1usize..4, 4usize..7).prop_flat_map(|(r, c)| arb_mat(r, c))) {
            if let Ok((p, perm)) = g.systematic_form() {
                let k = g.rows();
                let sys = Mat::hstack(&[&Mat::identity(g.field(), k), &p]).unwrap();
                let permuted = g.permute_columns(&perm);
                prop_assert_eq!(sys.rank(), k);
                prop_assert_eq!(Mat::vstack(&[&sys, &permuted]).unwrap().rank(), k);
                let (_, piv) = g.rref();
                if piv.iter().copied().eq(0..k) {
                    prop_assert!(perm.iter().copied().eq(0..g.cols()));
                }
            } else {
                prop_assert!(g.rank() < g.rows());
            }
        }
    }
}
