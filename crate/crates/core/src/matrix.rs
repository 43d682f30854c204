//! Dense square matrices tagged with the role they play in the three products.
//!
//! The index letters `i`, `j`, `k` range over `0..n`. Every role fixes which
//! letter names the rows and which names the columns, e.g. `A` is stored as
//! `a[i][j]` while `V` is stored as `v[k][i]`. Code that works in terms of
//! index letters goes through [`Mat::at`] and never has to remember a layout.

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axis {
    I,
    J,
    K,
}

impl Axis {
    #[inline]
    fn pick(self, i: usize, j: usize, k: usize) -> usize {
        match self {
            Axis::I => i,
            Axis::J => j,
            Axis::K => k,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Role {
    A,
    B,
    U,
    V,
    X,
    Y,
    /// Dual array `c[k][i]`.
    DualC,
    /// Dual array `w[i][j]`.
    DualW,
    /// Dual array `z[j][k]`.
    DualZ,
    /// Output `C = AB`, stored as `C[i][k]`.
    OutC,
    /// Output `W = UV`, stored as `W[j][i]`.
    OutW,
    /// Output `Z = XY`, stored as `Z[k][j]`.
    OutZ,
    /// No index convention; only positional access is meaningful.
    Plain,
}

impl Role {
    pub const ALL: [Role; 13] = [
        Role::A,
        Role::B,
        Role::U,
        Role::V,
        Role::X,
        Role::Y,
        Role::DualC,
        Role::DualW,
        Role::DualZ,
        Role::OutC,
        Role::OutW,
        Role::OutZ,
        Role::Plain,
    ];

    /// (row axis, column axis), or `None` for [`Role::Plain`].
    pub fn axes(self) -> Option<(Axis, Axis)> {
        use Axis::*;
        Some(match self {
            Role::A | Role::Y | Role::DualW => (I, J),
            Role::B | Role::U | Role::DualZ => (J, K),
            Role::V | Role::X | Role::DualC => (K, I),
            Role::OutC => (I, K),
            Role::OutW => (J, I),
            Role::OutZ => (K, J),
            Role::Plain => return None,
        })
    }

    /// Tag used in the JSON matrix format.
    pub fn tag(self) -> &'static str {
        match self {
            Role::A => "A",
            Role::B => "B",
            Role::U => "U",
            Role::V => "V",
            Role::X => "X",
            Role::Y => "Y",
            Role::DualC => "c",
            Role::DualW => "w",
            Role::DualZ => "z",
            Role::OutC => "C",
            Role::OutW => "W",
            Role::OutZ => "Z",
            Role::Plain => "M",
        }
    }

    pub fn from_tag(tag: &str) -> Result<Role> {
        Role::ALL
            .into_iter()
            .find(|r| r.tag() == tag)
            .ok_or_else(|| Error::Parse(format!("unknown matrix name `{tag}`")))
    }
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// Counts non-scalar multiplications. Every product of two quantities that
/// depend on the inputs goes through [`MulTally::mul`]; multiplication by a
/// fixed constant does not.
#[derive(Debug, Default, Clone, Copy, PartialEq, Eq)]
pub struct MulTally {
    count: u64,
}

impl MulTally {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn mul<T: Scalar>(&mut self, lhs: &T, rhs: &T) -> T {
        self.count += 1;
        lhs.mul_ref(rhs)
    }

    pub fn count(&self) -> u64 {
        self.count
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Mat<T> {
    role: Role,
    n: usize,
    entries: Vec<T>,
}

impl<T: Scalar> Mat<T> {
    pub fn zeros(role: Role, n: usize) -> Result<Self> {
        Self::from_fn(role, n, |_, _| T::zero())
    }

    pub fn identity(role: Role, n: usize) -> Result<Self> {
        Self::from_fn(role, n, |r, c| if r == c { T::one() } else { T::zero() })
    }

    /// Builds a matrix from positional `(row, col)` coordinates.
    pub fn from_fn(role: Role, n: usize, mut f: impl FnMut(usize, usize) -> T) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyMatrix);
        }
        let mut entries = Vec::with_capacity(n * n);
        for r in 0..n {
            for c in 0..n {
                entries.push(f(r, c));
            }
        }
        Ok(Self { role, n, entries })
    }

    pub fn from_rows(role: Role, rows: Vec<Vec<T>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::EmptyMatrix);
        }
        let mut entries = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: row.len(),
                });
            }
            entries.extend(row);
        }
        Ok(Self { role, n, entries })
    }

    /// Entry at index letters `(i, j, k)`; the letter this role does not use
    /// is ignored.
    ///
    /// Panics for [`Role::Plain`].
    #[inline]
    pub fn at(&self, i: usize, j: usize, k: usize) -> &T {
        let (row, col) = self
            .role
            .axes()
            .expect("Mat::at needs a role with an index convention");
        self.get(row.pick(i, j, k), col.pick(i, j, k))
    }

    /// Sums out `axis`, returning a vector indexed by the remaining letter.
    ///
    /// E.g. for `A = [a_ij]`, `sum_over(Axis::J)[i] = Σ_j a_ij`.
    pub fn sum_over(&self, axis: Axis) -> Vec<T> {
        let (row, col) = self
            .role
            .axes()
            .expect("Mat::sum_over needs a role with an index convention");
        let n = self.n;
        if axis == col {
            (0..n)
                .map(|r| {
                    self.row(r).iter().fold(T::zero(), |mut acc, e| {
                        acc += e;
                        acc
                    })
                })
                .collect()
        } else if axis == row {
            (0..n)
                .map(|c| {
                    (0..n).fold(T::zero(), |mut acc, r| {
                        acc += self.get(r, c);
                        acc
                    })
                })
                .collect()
        } else {
            panic!("role {:?} has no {:?} index", self.role, axis)
        }
    }

    pub fn total(&self) -> T {
        self.entries.iter().fold(T::zero(), |mut acc, e| {
            acc += e;
            acc
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a.add_ref(b))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a.sub_ref(b))
    }

    pub fn scale(&self, factor: &T) -> Self {
        Self {
            role: self.role,
            n: self.n,
            entries: self.entries.iter().map(|e| e.mul_ref(factor)).collect(),
        }
    }

    pub fn map<S: Scalar>(&self, f: impl FnMut(&T) -> S) -> Mat<S> {
        Mat {
            role: self.role,
            n: self.n,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&T, &T) -> T) -> Result<Self> {
        check_dim(self.n, other.n)?;
        Ok(Self {
            role: self.role,
            n: self.n,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| f(a, b))
                .collect(),
        })
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }
}

impl<T> Mat<T> {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn role(&self) -> Role {
        self.role
    }

    /// Same entries, relabelled.
    pub fn with_role(mut self, role: Role) -> Self {
        self.role = role;
        self
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> &T {
        &self.entries[row * self.n + col]
    }

    #[inline]
    pub fn set(&mut self, row: usize, col: usize, value: T) {
        self.entries[row * self.n + col] = value;
    }

    pub fn row(&self, row: usize) -> &[T] {
        &self.entries[row * self.n..(row + 1) * self.n]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[T]> {
        self.entries.chunks(self.n)
    }

    pub fn entries(&self) -> &[T] {
        &self.entries
    }

    pub(crate) fn expect_role(&self, role: Role) -> Result<()> {
        if self.role == role {
            Ok(())
        } else {
            Err(Error::RoleMismatch {
                expected: role.tag().into(),
                found: self.role.tag().into(),
            })
        }
    }
}

pub(crate) fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}

/// Definitional product `out[r][c] = Σ_s p[r][s] q[s][c]` on positional
/// indices. Performs exactly `n³` tallied multiplications. The result is
/// tagged [`Role::Plain`]; relabel it with [`Mat::with_role`].
pub fn naive_matmul<T: Scalar>(p: &Mat<T>, q: &Mat<T>, tally: &mut MulTally) -> Result<Mat<T>> {
    check_dim(p.n, q.n)?;
    let n = p.n;
    let mut entries = Vec::with_capacity(n * n);
    for r in 0..n {
        let prow = p.row(r);
        for c in 0..n {
            let mut acc = T::zero();
            for (s, ps) in prow.iter().enumerate() {
                acc += &tally.mul(ps, q.get(s, c));
            }
            entries.push(acc);
        }
    }
    Ok(Mat {
        role: Role::Plain,
        n,
        entries,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, Rational};

    fn m(rows: &[&[i64]]) -> Mat<Rational> {
        Mat::from_rows(
            Role::Plain,
            rows.iter()
                .map(|r| r.iter().map(|&v| int(v)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn identity_times_identity() {
        let id = Mat::<Rational>::identity(Role::Plain, 2).unwrap();
        let mut t = MulTally::new();
        assert_eq!(naive_matmul(&id, &id, &mut t).unwrap(), id);
        assert_eq!(t.count(), 8);
    }

    #[test]
    fn zero_annihilates() {
        let p = m(&[&[1, -2, 3], &[4, 5, 6], &[7, 8, -9]]);
        let zero = Mat::zeros(Role::Plain, 3).unwrap();
        let mut t = MulTally::new();
        assert!(naive_matmul(&p, &zero, &mut t).unwrap().is_zero());
        assert_eq!(t.count(), 27);
    }

    #[test]
    fn two_by_two_expansion() {
        let mut t = MulTally::new();
        let out = naive_matmul(&m(&[&[1, 2], &[3, 4]]), &m(&[&[5, 6], &[7, 8]]), &mut t).unwrap();
        assert_eq!(out, m(&[&[19, 22], &[43, 50]]));
    }

    #[test]
    fn dimension_mismatch_rejected() {
        let p = Mat::<Rational>::zeros(Role::Plain, 2).unwrap();
        let q = Mat::<Rational>::zeros(Role::Plain, 3).unwrap();
        let err = naive_matmul(&p, &q, &mut MulTally::new()).unwrap_err();
        assert_eq!(
            err,
            Error::DimensionMismatch {
                expected: 2,
                found: 3
            }
        );
    }

    #[test]
    fn empty_and_ragged_rejected() {
        assert_eq!(
            Mat::<f64>::zeros(Role::A, 0).unwrap_err(),
            Error::EmptyMatrix
        );
        assert!(Mat::from_rows(Role::A, vec![vec![1.0, 2.0], vec![3.0]]).is_err());
    }

    #[test]
    fn index_letters_follow_role() {
        // v[k][i]: row is k, column is i.
        let v = Mat::from_fn(Role::V, 3, |r, c| (10 * r + c) as f64).unwrap();
        assert_eq!(*v.at(1, 0, 2), 21.0);
        // Σ_i v_ki, indexed by k.
        assert_eq!(v.sum_over(Axis::I), vec![1.0 + 2.0, 30.0 + 3.0, 60.0 + 3.0]);
        // Σ_k v_ki, indexed by i.
        assert_eq!(v.sum_over(Axis::K), vec![30.0, 33.0, 36.0]);
    }

    #[test]
    fn role_tags_round_trip() {
        for role in Role::ALL {
            assert_eq!(Role::from_tag(role.tag()).unwrap(), role);
        }
        assert!(Role::from_tag("Q").is_err());
    }
}
