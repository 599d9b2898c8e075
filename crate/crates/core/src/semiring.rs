//! Commutative idempotent semirings with a distinguished element of infinite
//! multiplicative order, the integer tropical instance, and upper-triangular
//! matrices with skew transposition.

use std::fmt;

use serde::ser::{Serialize, SerializeStruct, Serializer};

use crate::error::{Error, Result};

pub trait Semiring: Clone + PartialEq + Eq + fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    /// The element of infinite multiplicative order.
    fn s() -> Self;
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Result<Self>;

    fn is_zero(&self) -> bool {
        *self == Self::zero()
    }
}

/// `ℤ ∪ {−∞}` with max and +; `None` is −∞.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tropical(pub Option<i64>);

impl Tropical {
    pub const NEG_INF: Tropical = Tropical(None);

    pub fn finite(v: i64) -> Tropical {
        Tropical(Some(v))
    }
}

impl Semiring for Tropical {
    fn zero() -> Self {
        Tropical(None)
    }

    fn one() -> Self {
        Tropical(Some(0))
    }

    fn s() -> Self {
        Tropical(Some(1))
    }

    fn add(&self, other: &Self) -> Self {
        // None < Some(_), so Option's ordering already puts −∞ at the bottom.
        Tropical(self.0.max(other.0))
    }

    fn mul(&self, other: &Self) -> Result<Self> {
        match (self.0, other.0) {
            (Some(a), Some(b)) => a.checked_add(b).map(|c| Tropical(Some(c))).ok_or(Error::Overflow),
            _ => Ok(Tropical(None)),
        }
    }
}

impl fmt::Display for Tropical {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            Some(v) => write!(f, "{v}"),
            None => f.write_str("-inf"),
        }
    }
}

impl Serialize for Tropical {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self.0 {
            Some(v) => s.serialize_i64(v),
            None => s.serialize_str("-inf"),
        }
    }
}

/// Square upper-triangular matrix, stored row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct UTMatrix<S> {
    dim: usize,
    entries: Vec<S>,
}

impl<S: Semiring> UTMatrix<S> {
    pub fn from_rows(rows: Vec<Vec<S>>) -> Result<Self> {
        let dim = rows.len();
        let mut entries = Vec::with_capacity(dim * dim);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != dim {
                return Err(Error::DimMismatch(dim, row.len()));
            }
            for (j, x) in row.into_iter().enumerate() {
                if j < i && !x.is_zero() {
                    return Err(Error::NotUpperTriangular { row: i, col: j });
                }
                entries.push(x);
            }
        }
        Ok(UTMatrix { dim, entries })
    }

    pub fn identity(dim: usize) -> Self {
        let mut entries = vec![S::zero(); dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = S::one();
        }
        UTMatrix { dim, entries }
    }

    /// The 1×1 matrix `[x]`.
    pub fn scalar(x: S) -> Self {
        UTMatrix { dim: 1, entries: vec![x] }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &S {
        &self.entries[i * self.dim + j]
    }

    pub fn rows(&self) -> Vec<Vec<S>> {
        self.entries.chunks(self.dim.max(1)).take(self.dim).map(|r| r.to_vec()).collect()
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::DimMismatch(self.dim, other.dim));
        }
        let n = self.dim;
        let mut entries = vec![S::zero(); n * n];
        for i in 0..n {
            for j in i..n {
                let mut acc = S::zero();
                for k in i..=j {
                    let a = self.get(i, k);
                    let b = other.get(k, j);
                    if a.is_zero() || b.is_zero() {
                        continue;
                    }
                    acc = acc.add(&a.mul(b)?);
                }
                entries[i * n + j] = acc;
            }
        }
        Ok(UTMatrix { dim: n, entries })
    }

    pub fn pow(&self, k: u64) -> Result<Self> {
        let mut result = Self::identity(self.dim);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = result.mul(&base)?;
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(result)
    }

    /// Reflection across the secondary diagonal: `(A^D)_ij = A_{(n+1-j)(n+1-i)}`.
    pub fn skew_transpose(&self) -> Self {
        let n = self.dim;
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(self.get(n - 1 - j, n - 1 - i).clone());
            }
        }
        UTMatrix { dim: n, entries }
    }

    pub fn block_diag(blocks: &[Self]) -> Self {
        let dim = blocks.iter().map(|b| b.dim).sum();
        let mut entries = vec![S::zero(); dim * dim];
        let mut off = 0;
        for b in blocks {
            for i in 0..b.dim {
                for j in 0..b.dim {
                    entries[(off + i) * dim + off + j] = b.get(i, j).clone();
                }
            }
            off += b.dim;
        }
        UTMatrix { dim, entries }
    }

    pub fn is_upper_triangular(&self) -> bool {
        (0..self.dim).all(|i| (0..i).all(|j| self.get(i, j).is_zero()))
    }
}

/// `P = [[s, 0], [0, 1]]`.
pub fn gen_p<S: Semiring>() -> UTMatrix<S> {
    UTMatrix { dim: 2, entries: vec![S::s(), S::zero(), S::zero(), S::one()] }
}

/// `Q = [[1, 0], [0, s]]`.
pub fn gen_q<S: Semiring>() -> UTMatrix<S> {
    UTMatrix { dim: 2, entries: vec![S::one(), S::zero(), S::zero(), S::s()] }
}

/// `J = [[1, 1], [0, 0]]`.
pub fn gen_j<S: Semiring>() -> UTMatrix<S> {
    UTMatrix { dim: 2, entries: vec![S::one(), S::one(), S::zero(), S::zero()] }
}

/// `K = [[0, 1], [0, 1]]`.
pub fn gen_k<S: Semiring>() -> UTMatrix<S> {
    UTMatrix { dim: 2, entries: vec![S::zero(), S::one(), S::zero(), S::one()] }
}

/// Looks a generator up by name: `P`, `Q`, `J`, `K`, or `E<n>`.
pub fn named<S: Semiring>(name: &str) -> Option<UTMatrix<S>> {
    match name {
        "P" => Some(gen_p()),
        "Q" => Some(gen_q()),
        "J" => Some(gen_j()),
        "K" => Some(gen_k()),
        _ => name.strip_prefix('E')?.parse().ok().map(UTMatrix::identity),
    }
}

impl<S: Semiring + Serialize> Serialize for UTMatrix<S> {
    fn serialize<Ser: Serializer>(&self, s: Ser) -> std::result::Result<Ser::Ok, Ser::Error> {
        let mut st = s.serialize_struct("UTMatrix", 2)?;
        st.serialize_field("dim", &self.dim)?;
        st.serialize_field("entries", &self.rows())?;
        st.end()
    }
}

impl<S: Semiring + fmt::Display> fmt::Display for UTMatrix<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.entries.iter().map(|x| x.to_string()).collect();
        let width = cells.iter().map(|c| c.len()).max().unwrap_or(1);
        for i in 0..self.dim {
            let row: Vec<String> =
                (0..self.dim).map(|j| format!("{:>width$}", cells[i * self.dim + j])).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    type M = UTMatrix<Tropical>;
    const Z: Tropical = Tropical(None);
    fn t(v: i64) -> Tropical {
        Tropical(Some(v))
    }

    #[test]
    fn generator_products() {
        let pq = gen_p::<Tropical>().mul(&gen_q()).unwrap();
        assert_eq!(pq, M::from_rows(vec![vec![t(1), Z], vec![Z, t(1)]]).unwrap());
        let jk = gen_j::<Tropical>().mul(&gen_k()).unwrap();
        assert_eq!(jk, M::from_rows(vec![vec![Z, t(0)], vec![Z, Z]]).unwrap());
        let a = M::from_rows(vec![vec![t(3), t(-2)], vec![Z, t(7)]]).unwrap();
        assert_eq!(M::identity(2).mul(&a).unwrap(), a);
    }

    #[test]
    fn skew_transpose_examples() {
        assert_eq!(gen_p::<Tropical>().skew_transpose(), gen_q());
        assert_eq!(M::identity(5).skew_transpose(), M::identity(5));
        assert_eq!(gen_j::<Tropical>().skew_transpose(), gen_k());
    }

    #[test]
    fn block_diag_examples() {
        let d = M::block_diag(&[M::scalar(Tropical::s()), gen_p(), gen_j(), M::scalar(Tropical::one())]);
        assert_eq!(d.dim(), 6);
        assert_eq!(*d.get(0, 0), t(1));
        assert_eq!(*d.get(3, 4), t(0));
        assert_eq!(*d.get(0, 1), Z);
        assert_eq!(M::block_diag(&[]).dim(), 0);
        assert_eq!(M::block_diag(&[M::identity(2), M::identity(2)]), M::identity(4));
    }

    #[test]
    fn construction_rejects_lower_entries() {
        let r = M::from_rows(vec![vec![t(0), Z], vec![t(1), t(0)]]);
        assert!(matches!(r, Err(Error::NotUpperTriangular { row: 1, col: 0 })));
        assert!(matches!(M::identity(2).mul(&M::identity(3)), Err(Error::DimMismatch(2, 3))));
    }

    #[test]
    fn overflow_is_reported() {
        let big = M::scalar(t(i64::MAX));
        assert!(matches!(big.mul(&M::scalar(t(1))), Err(Error::Overflow)));
    }

    #[test]
    fn s_powers_are_distinct() {
        let pq = gen_p::<Tropical>().mul(&gen_q()).unwrap();
        for k in [0u64, 1, 2, 17, 1_000, 999_999, 1_000_000] {
            assert_eq!(*pq.pow(k).unwrap().get(0, 0), t(k as i64));
        }
    }

    #[test]
    fn json_form() {
        let v = serde_json::to_value(gen_k::<Tropical>()).unwrap();
        assert_eq!(v, serde_json::json!({"dim": 2, "entries": [["-inf", 0], ["-inf", 0]]}));
        assert_eq!(named::<Tropical>("E3"), Some(M::identity(3)));
        assert_eq!(named::<Tropical>("Q"), Some(gen_q()));
    }

    fn trop() -> impl Strategy<Value = Tropical> {
        prop_oneof![1 => Just(Z), 4 => (-50i64..50).prop_map(t)]
    }

    fn ut(n: usize) -> impl Strategy<Value = M> {
        proptest::collection::vec(trop(), n * n).prop_map(move |v| {
            let rows = (0..n).map(|i| (0..n).map(|j| if j < i { Z } else { v[i * n + j] }).collect()).collect();
            M::from_rows(rows).unwrap()
        })
    }

    proptest! {
        #[test]
        fn tropical_axioms(a in trop(), b in trop(), c in trop()) {
            prop_assert_eq!(a.add(&a), a);
            prop_assert_eq!(a.add(&b), b.add(&a));
            prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
            prop_assert_eq!(a.mul(&Z).unwrap(), Z);
            prop_assert_eq!(a.add(&Z), a);
            prop_assert_eq!(a.mul(&Tropical::one()).unwrap(), a);
            prop_assert_eq!(a.mul(&b.add(&c)).unwrap(), a.mul(&b).unwrap().add(&a.mul(&c).unwrap()));
        }

        #[test]
        fn skew_transpose_reverses_products(a in ut(4), b in ut(4)) {
            let ab = a.mul(&b).unwrap();
            prop_assert!(ab.is_upper_triangular());
            prop_assert_eq!(ab.skew_transpose(), b.skew_transpose().mul(&a.skew_transpose()).unwrap());
            prop_assert_eq!(a.skew_transpose().skew_transpose(), a);
        }
    }
}
