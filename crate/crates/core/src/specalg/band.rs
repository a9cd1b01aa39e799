use std::fmt;

use crate::error::{Error, Result};
use crate::field::Field;

/// Square banded matrix with exact entries.
///
/// Only the entries with `i - lower <= j <= i + upper` are stored; all
/// others are structurally zero.
#[derive(Clone, PartialEq)]
pub struct BandMatrix<F: Field> {
    size: usize,
    lower: usize,
    upper: usize,
    data: Vec<F>,
}

impl<F: Field> BandMatrix<F> {
    pub fn zeros(size: usize, lower: usize, upper: usize) -> Self {
        assert!(size >= 1, "matrix size must be at least 1");
        let lower = lower.min(size - 1);
        let upper = upper.min(size - 1);
        BandMatrix {
            size,
            lower,
            upper,
            data: vec![F::zero(); size * (lower + upper + 1)],
        }
    }

    pub fn identity(size: usize) -> Self {
        Self::diagonal((0..size).map(|_| F::one()).collect())
    }

    pub fn diagonal(diag: Vec<F>) -> Self {
        let mut m = Self::zeros(diag.len(), 0, 0);
        m.data = diag;
        m
    }

    /// Fills the band from `entry(i, j)`.
    pub fn from_fn(
        size: usize,
        lower: usize,
        upper: usize,
        mut entry: impl FnMut(usize, usize) -> Result<F>,
    ) -> Result<Self> {
        let mut m = Self::zeros(size, lower, upper);
        for i in 0..size {
            for j in m.band_cols(i) {
                let v = entry(i, j)?;
                m.set(i, j, v);
            }
        }
        Ok(m)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn lower(&self) -> usize {
        self.lower
    }

    pub fn upper(&self) -> usize {
        self.upper
    }

    fn width(&self) -> usize {
        self.lower + self.upper + 1
    }

    /// Columns of row `i` that lie inside the band.
    pub fn band_cols(&self, i: usize) -> std::ops::Range<usize> {
        i.saturating_sub(self.lower)..(i + self.upper + 1).min(self.size)
    }

    fn slot(&self, i: usize, j: usize) -> Option<usize> {
        if i >= self.size || j >= self.size || j + self.lower < i || j > i + self.upper {
            return None;
        }
        Some(i * self.width() + (j + self.lower - i))
    }

    /// The stored entry, or `None` outside the band.
    pub fn get(&self, i: usize, j: usize) -> Option<&F> {
        self.slot(i, j).map(|k| &self.data[k])
    }

    pub fn entry(&self, i: usize, j: usize) -> F {
        self.get(i, j).cloned().unwrap_or_else(F::zero)
    }

    /// Panics when `(i, j)` is outside the band.
    pub fn set(&mut self, i: usize, j: usize, value: F) {
        let k = self
            .slot(i, j)
            .unwrap_or_else(|| panic!("({i}, {j}) is outside the band"));
        self.data[k] = value;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Field::is_zero)
    }

    /// Nonzero entries in row-major order.
    pub fn nonzeros(&self) -> impl Iterator<Item = (usize, usize, &F)> + '_ {
        (0..self.size).flat_map(move |i| {
            self.band_cols(i)
                .filter_map(move |j| self.get(i, j).filter(|v| !v.is_zero()).map(|v| (i, j, v)))
        })
    }

    fn check_size(&self, other: &Self) -> Result<()> {
        if self.size != other.size {
            return Err(Error::SizeMismatch(self.size, other.size));
        }
        Ok(())
    }

    fn combine(&self, other: &Self, op: impl Fn(F, F) -> F) -> Result<Self> {
        self.check_size(other)?;
        let mut out = Self::zeros(self.size, self.lower.max(other.lower), self.upper.max(other.upper));
        for i in 0..self.size {
            for j in out.band_cols(i) {
                out.set(i, j, op(self.entry(i, j), other.entry(i, j)));
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.combine(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.combine(other, |a, b| a - b)
    }

    pub fn scale(&self, c: &F) -> Self {
        BandMatrix {
            data: self.data.iter().map(|v| c.clone() * v.clone()).collect(),
            ..self.clone()
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_size(other)?;
        let mut out = Self::zeros(self.size, self.lower + other.lower, self.upper + other.upper);
        for i in 0..self.size {
            for k in self.band_cols(i) {
                let a = &self.data[self.slot(i, k).expect("in band")];
                if a.is_zero() {
                    continue;
                }
                for j in other.band_cols(k) {
                    let b = &other.data[other.slot(k, j).expect("in band")];
                    if b.is_zero() {
                        continue;
                    }
                    let s = out.slot(i, j).expect("product band");
                    out.data[s] = out.data[s].clone() + a.clone() * b.clone();
                }
            }
        }
        Ok(out)
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.size, self.upper, self.lower);
        for i in 0..self.size {
            for j in self.band_cols(i) {
                out.set(j, i, self.entry(i, j));
            }
        }
        out
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[F]) -> Result<Vec<F>> {
        if v.len() != self.size {
            return Err(Error::SizeMismatch(self.size, v.len()));
        }
        Ok((0..self.size)
            .map(|i| {
                self.band_cols(i)
                    .fold(F::zero(), |acc, j| acc + self.entry(i, j) * v[j].clone())
            })
            .collect())
    }

    pub fn try_map<G: Field>(&self, mut g: impl FnMut(&F) -> Result<G>) -> Result<BandMatrix<G>> {
        Ok(BandMatrix {
            size: self.size,
            lower: self.lower,
            upper: self.upper,
            data: self.data.iter().map(&mut g).collect::<Result<Vec<G>>>()?,
        })
    }

    /// Leading principal `size × size` block.
    pub fn truncate(&self, size: usize) -> Self {
        let mut out = Self::zeros(size.min(self.size), self.lower, self.upper);
        for i in 0..out.size {
            for j in out.band_cols(i) {
                out.set(i, j, self.entry(i, j));
            }
        }
        out
    }
}

/// First nonzero entry `(i, j)` with `max(i, j) < size - margin`, scanning
/// rows in order; `None` when that interior is exactly zero.
pub fn first_nonzero_on_interior<F: Field>(m: &BandMatrix<F>, margin: usize) -> Option<(usize, usize)> {
    let limit = m.size().saturating_sub(margin);
    m.nonzeros().find(|&(i, j, _)| i.max(j) < limit).map(|(i, j, _)| (i, j))
}

/// Whether the interior of `m` is zero, with the first offending entry.
pub fn is_zero_on_interior<F: Field>(m: &BandMatrix<F>, margin: usize) -> (bool, Option<(usize, usize)>) {
    let w = first_nonzero_on_interior(m, margin);
    (w.is_none(), w)
}

impl<F: Field> fmt::Debug for BandMatrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "BandMatrix {}x{} (band -{}..+{})",
            self.size, self.size, self.lower, self.upper
        )?;
        for i in 0..self.size {
            let row: Vec<String> = (0..self.size).map(|j| self.entry(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{parse_rational, Rational};

    fn r(s: &str) -> Rational {
        parse_rational(s).unwrap()
    }

    fn tri(size: usize, seed: i64) -> BandMatrix<Rational> {
        BandMatrix::from_fn(size, 1, 1, |i, j| {
            Ok(Rational::from_int((i as i64 + 2) * seed - 3 * j as i64 + 1))
        })
        .unwrap()
    }

    fn dense_mul(a: &BandMatrix<Rational>, b: &BandMatrix<Rational>) -> Vec<Vec<Rational>> {
        let n = a.size();
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (0..n).fold(r("0"), |acc, k| acc + a.entry(i, k) * b.entry(k, j)))
                    .collect()
            })
            .collect()
    }

    #[test]
    fn product_matches_dense() {
        let a = tri(6, 2);
        let b = tri(6, -5);
        let ab = a.mul(&b).unwrap();
        assert_eq!((ab.lower(), ab.upper()), (2, 2));
        let dense = dense_mul(&a, &b);
        for i in 0..6 {
            for j in 0..6 {
                assert_eq!(ab.entry(i, j), dense[i][j]);
            }
        }
        let abc = ab.mul(&a).unwrap();
        assert_eq!((abc.lower(), abc.upper()), (3, 3));
    }

    #[test]
    fn transpose_and_identity() {
        let a = tri(5, 3);
        assert_eq!(a.transpose().transpose(), a);
        assert_eq!(a.transpose().entry(0, 1), a.entry(1, 0));
        let id = BandMatrix::identity(5);
        assert_eq!(id.mul(&a).unwrap(), a);
        assert!(a.mul(&BandMatrix::identity(4)).is_err());
    }

    #[test]
    fn interior_checks() {
        let z: BandMatrix<Rational> = BandMatrix::zeros(5, 1, 1);
        assert_eq!(is_zero_on_interior(&z, 0), (true, None));
        let mut m = z.clone();
        m.set(4, 4, r("3"));
        m.set(3, 4, r("1"));
        assert_eq!(is_zero_on_interior(&m, 3), (true, None));
        assert_eq!(is_zero_on_interior(&m, 0), (false, Some((3, 4))));
        m.set(0, 0, r("1"));
        assert_eq!(is_zero_on_interior(&m, 3), (false, Some((0, 0))));
    }

    #[test]
    fn apply_vector() {
        let a = tri(4, 1);
        let v: Vec<Rational> = (1..5).map(Rational::from_int).collect();
        let got = a.apply(&v).unwrap();
        for i in 0..4 {
            let expected = (0..4).fold(r("0"), |acc, j| acc + a.entry(i, j) * v[j].clone());
            assert_eq!(got[i], expected);
        }
    }
}
