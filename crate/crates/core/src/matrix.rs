//! Dense matrices over Q(zeta_{2p}) and exact row reduction.

use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::cyclo::{CycloContext, CycloNum};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    ctx: Arc<CycloContext>,
    rows: usize,
    cols: usize,
    data: Vec<CycloNum>,
}

impl Matrix {
    pub fn zeros(ctx: &Arc<CycloContext>, rows: usize, cols: usize) -> Self {
        Self { ctx: ctx.clone(), rows, cols, data: vec![CycloNum::zero(ctx); rows * cols] }
    }

    pub fn identity(ctx: &Arc<CycloContext>, n: usize) -> Self {
        Self::scalar(ctx, n, &CycloNum::one(ctx))
    }

    pub fn scalar(ctx: &Arc<CycloContext>, n: usize, s: &CycloNum) -> Self {
        let mut m = Self::zeros(ctx, n, n);
        for i in 0..n {
            m.data[i * n + i] = s.clone();
        }
        m
    }

    pub fn diagonal(ctx: &Arc<CycloContext>, entries: &[CycloNum]) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(ctx, n, n);
        for (i, x) in entries.iter().enumerate() {
            m.data[i * n + i] = x.clone();
        }
        m
    }

    pub fn from_rows(ctx: &Arc<CycloContext>, rows: Vec<Vec<CycloNum>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::ArityMismatch("ragged matrix rows".into()));
        }
        if rows.iter().flatten().any(|x| x.p() != ctx.p()) {
            return Err(Error::ContextMismatch { left: ctx.p(), right: rows.iter().flatten().find(|x| x.p() != ctx.p()).unwrap().p() });
        }
        Ok(Self { ctx: ctx.clone(), rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn ctx(&self) -> &Arc<CycloContext> {
        &self.ctx
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &CycloNum {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: CycloNum) {
        self.data[i * self.cols + j] = v;
    }

    /// Row-major entries.
    pub fn entries(&self) -> &[CycloNum] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<CycloNum>> {
        self.data.chunks(self.cols.max(1)).take(self.rows).map(<[CycloNum]>::to_vec).collect()
    }

    fn same_shape(&self, other: &Self) -> Result<()> {
        if self.ctx.p() != other.ctx.p() {
            return Err(Error::ContextMismatch { left: self.ctx.p(), right: other.ctx.p() });
        }
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::ArityMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Ok(Self { data, ..self.clone() })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        Ok(Self { data, ..self.clone() })
    }

    pub fn scale(&self, s: &CycloNum) -> Self {
        Self { data: self.data.iter().map(|a| a * s).collect(), ..self.clone() }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.ctx.p() != other.ctx.p() {
            return Err(Error::ContextMismatch { left: self.ctx.p(), right: other.ctx.p() });
        }
        if self.cols != other.rows {
            return Err(Error::ArityMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let (n, m, k) = (self.rows, other.cols, self.cols);
        let data: Vec<CycloNum> = (0..n * m)
            .into_par_iter()
            .map(|idx| {
                let (i, j) = (idx / m, idx % m);
                let mut acc = CycloNum::zero(&self.ctx);
                for t in 0..k {
                    let a = &self.data[i * k + t];
                    let b = &other.data[t * m + j];
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                acc
            })
            .collect();
        Ok(Self { ctx: self.ctx.clone(), rows: n, cols: m, data })
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(&self.ctx, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        out
    }

    /// Entrywise A -> A^{-1}.
    pub fn conj(&self) -> Self {
        Self { data: self.data.iter().map(CycloNum::conj).collect(), ..self.clone() }
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(CycloNum::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Self::identity(&self.ctx, self.rows)
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.get(i, j).is_zero()))
    }

    pub fn diag(&self) -> Vec<CycloNum> {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i).clone()).collect()
    }

    /// Inverse by Gauss-Jordan elimination.
    pub fn inverse(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::ArityMismatch(format!("inverse of a {}x{} matrix", self.rows, self.cols)));
        }
        let n = self.rows;
        let mut a = self.to_rows();
        let mut inv = Self::identity(&self.ctx, n).to_rows();
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a[r][col].is_zero()).ok_or(Error::Singular)?;
            a.swap(col, pivot);
            inv.swap(col, pivot);
            let s = a[col][col].inv()?;
            for x in a[col].iter_mut().chain(inv[col].iter_mut()) {
                *x = &*x * &s;
            }
            for r in 0..n {
                if r == col || a[r][col].is_zero() {
                    continue;
                }
                let f = a[r][col].clone();
                for j in 0..n {
                    let t = &a[col][j] * &f;
                    a[r][j] = &a[r][j] - &t;
                    let t = &inv[col][j] * &f;
                    inv[r][j] = &inv[r][j] - &t;
                }
            }
        }
        Self::from_rows(&self.ctx, inv)
    }

    pub fn pow(&self, e: u32) -> Result<Self> {
        let mut acc = Self::identity(&self.ctx, self.rows);
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Row-major flattening, the vector form used by the algebra routines.
    pub fn flatten(&self) -> Vec<CycloNum> {
        self.data.clone()
    }

    pub fn from_flat(ctx: &Arc<CycloContext>, n: usize, v: Vec<CycloNum>) -> Result<Self> {
        if v.len() != n * n {
            return Err(Error::ArityMismatch(format!("{} entries for a {n}x{n} matrix", v.len())));
        }
        Ok(Self { ctx: ctx.clone(), rows: n, cols: n, data: v })
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over Q(zeta_{})", self.rows, self.cols, 2 * self.ctx.p())?;
        for row in self.to_rows() {
            let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

impl Serialize for Matrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_rows().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Matrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let rows = Vec::<Vec<CycloNum>>::deserialize(deserializer)?;
        let ctx = rows
            .iter()
            .flatten()
            .next()
            .map(|x| x.ctx().clone())
            .ok_or_else(|| D::Error::custom("an empty matrix carries no level"))?;
        Matrix::from_rows(&ctx, rows).map_err(D::Error::custom)
    }
}

/// Incrementally maintained reduced row echelon form: every stored row has a
/// leading 1 in its pivot column and zeros in all other pivot columns. Rows
/// are kept sorted by pivot, so the form is canonical for the span.
#[derive(Clone, Debug)]
pub struct Echelon {
    ctx: Arc<CycloContext>,
    width: usize,
    rows: Vec<(usize, Vec<CycloNum>)>,
}

impl Echelon {
    pub fn new(ctx: &Arc<CycloContext>, width: usize) -> Self {
        Self { ctx: ctx.clone(), width, rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn rows(&self) -> impl Iterator<Item = &[CycloNum]> {
        self.rows.iter().map(|(_, r)| r.as_slice())
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.rows.iter().map(|(p, _)| *p).collect()
    }

    /// v minus its projection onto the span along pivot columns.
    pub fn reduce(&self, v: &[CycloNum]) -> Vec<CycloNum> {
        let mut v = v.to_vec();
        for (p, row) in &self.rows {
            if v[*p].is_zero() {
                continue;
            }
            let f = v[*p].clone();
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x = &*x - &(r * &f);
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[CycloNum]) -> bool {
        self.reduce(v).iter().all(CycloNum::is_zero)
    }

    /// Add a vector; returns whether the rank grew.
    pub fn insert(&mut self, v: &[CycloNum]) -> bool {
        assert_eq!(v.len(), self.width, "echelon width");
        let mut v = self.reduce(v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let s = v[p].inv().expect("nonzero pivot");
        for x in v.iter_mut() {
            if !x.is_zero() {
                *x = &*x * &s;
            }
        }
        for (_, row) in self.rows.iter_mut() {
            if row[p].is_zero() {
                continue;
            }
            let f = row[p].clone();
            for (x, r) in row.iter_mut().zip(&v) {
                if !r.is_zero() {
                    *x = &*x - &(r * &f);
                }
            }
        }
        let at = self.rows.partition_point(|(q, _)| *q < p);
        self.rows.insert(at, (p, v));
        true
    }

    /// A basis of the solution space of { x : row . x = 0 for every row }.
    pub fn nullspace(&self) -> Vec<Vec<CycloNum>> {
        let pivots = self.pivots();
        let mut out = Vec::new();
        for free in (0..self.width).filter(|c| !pivots.contains(c)) {
            let mut x = vec![CycloNum::zero(&self.ctx); self.width];
            x[free] = CycloNum::one(&self.ctx);
            for (p, row) in &self.rows {
                x[*p] = -row[free].clone();
            }
            out.push(x);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> Arc<CycloContext> {
        CycloContext::new(8).unwrap()
    }

    fn a(k: i64) -> CycloNum {
        CycloNum::a_pow(&ctx(), k)
    }

    fn int(v: i64) -> CycloNum {
        CycloNum::from_int(&ctx(), v)
    }

    #[test]
    fn inverse_round_trip() {
        let k = ctx();
        let m = Matrix::from_rows(&k, vec![vec![a(1), int(2), int(0)], vec![int(0), a(3), int(1)], vec![int(1), int(0), &a(2) + &int(1)]]).unwrap();
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).unwrap().is_identity());
        assert!(inv.mul(&m).unwrap().is_identity());
        let singular = Matrix::from_rows(&k, vec![vec![a(1), a(2)], vec![a(2), a(3)]]).unwrap();
        assert_eq!(singular.inverse(), Err(Error::Singular));
    }

    #[test]
    fn shape_errors() {
        let k = ctx();
        let m = Matrix::zeros(&k, 2, 3);
        assert!(m.mul(&m).is_err());
        assert!(m.add(&Matrix::zeros(&k, 3, 2)).is_err());
        let other = Matrix::zeros(&CycloContext::new(10).unwrap(), 2, 3);
        assert!(matches!(m.add(&other), Err(Error::ContextMismatch { .. })));
    }

    #[test]
    fn json_round_trip_is_byte_identical() {
        let k = ctx();
        let m = Matrix::from_rows(&k, vec![vec![a(1), int(-3)], vec![&a(2) * &int(5), a(-1)]]).unwrap();
        let text = serde_json::to_string(&m).unwrap();
        let back: Matrix = serde_json::from_str(&text).unwrap();
        assert_eq!(back, m);
        assert_eq!(serde_json::to_string(&back).unwrap(), text);
    }

    #[test]
    fn echelon_and_nullspace() {
        let k = ctx();
        let mut e = Echelon::new(&k, 3);
        assert!(e.insert(&[int(1), a(1), int(0)]));
        assert!(!e.insert(&[a(2), a(3), int(0)]));
        assert!(e.insert(&[int(0), int(1), int(1)]));
        assert_eq!(e.rank(), 2);
        let ns = e.nullspace();
        assert_eq!(ns.len(), 1);
        for row in [[int(1), a(1), int(0)], [int(0), int(1), int(1)]] {
            let dot = row.iter().zip(&ns[0]).fold(CycloNum::zero(&k), |acc, (x, y)| &acc + &(x * y));
            assert!(dot.is_zero());
        }
        assert!(e.contains(&[int(2), &a(1).scale_int(2) + &int(1), int(1)]));
        assert!(!e.contains(&[int(0), int(0), int(1)]));
    }
}
