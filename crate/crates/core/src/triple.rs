//! The three disjoint products `C = AB`, `W = UV`, `Z = XY` and the dual
//! arrays that pair with them in the trace form.

use crate::error::{Error, Result};
use crate::matrix::{check_dim, naive_matmul, Mat, MulTally, Role};
use crate::random::MatrixRng;
use crate::scalar::Scalar;

/// The six operands, each carrying its role tag.
#[derive(Debug, Clone, PartialEq)]
pub struct DisjointInputs<T> {
    n: usize,
    a: Mat<T>,
    b: Mat<T>,
    u: Mat<T>,
    v: Mat<T>,
    x: Mat<T>,
    y: Mat<T>,
}

impl<T: Scalar> DisjointInputs<T> {
    pub fn new(a: Mat<T>, b: Mat<T>, u: Mat<T>, v: Mat<T>, x: Mat<T>, y: Mat<T>) -> Result<Self> {
        let n = a.n();
        for (m, role) in [
            (&a, Role::A),
            (&b, Role::B),
            (&u, Role::U),
            (&v, Role::V),
            (&x, Role::X),
            (&y, Role::Y),
        ] {
            m.expect_role(role)?;
            check_dim(n, m.n())?;
        }
        Ok(Self {
            n,
            a,
            b,
            u,
            v,
            x,
            y,
        })
    }

    /// Assembles the six operands from matrices in any order, matching them
    /// by role.
    pub fn from_mats(mats: Vec<Mat<T>>) -> Result<Self> {
        let mut slots: [Option<Mat<T>>; 6] = Default::default();
        let order = [Role::A, Role::B, Role::U, Role::V, Role::X, Role::Y];
        for m in mats {
            let Some(pos) = order.iter().position(|r| *r == m.role()) else {
                return Err(Error::Parse(format!(
                    "unexpected matrix `{}` among inputs",
                    m.role()
                )));
            };
            if slots[pos].replace(m).is_some() {
                return Err(Error::Parse(format!("matrix `{}` given twice", order[pos])));
            }
        }
        let mut take = |pos: usize| {
            slots[pos]
                .take()
                .ok_or_else(|| Error::Parse(format!("missing input matrix `{}`", order[pos])))
        };
        let (a, b, u, v, x, y) = (take(0)?, take(1)?, take(2)?, take(3)?, take(4)?, take(5)?);
        Self::new(a, b, u, v, x, y)
    }

    pub fn zeros(n: usize) -> Result<Self> {
        Self::filled(|role| Mat::zeros(role, n))
    }

    pub fn identities(n: usize) -> Result<Self> {
        Self::filled(|role| Mat::identity(role, n))
    }

    pub fn ones(n: usize) -> Result<Self> {
        Self::filled(|role| Mat::from_fn(role, n, |_, _| T::one()))
    }

    /// Integer entries in `[-range, range]`, drawn in the order A, B, U, V, X, Y.
    pub fn random(n: usize, rng: &mut MatrixRng, range: u32) -> Result<Self> {
        Self::filled(|role| rng.int_matrix(role, n, range))
    }

    fn filled(mut make: impl FnMut(Role) -> Result<Mat<T>>) -> Result<Self> {
        Self::new(
            make(Role::A)?,
            make(Role::B)?,
            make(Role::U)?,
            make(Role::V)?,
            make(Role::X)?,
            make(Role::Y)?,
        )
    }

    pub fn n(&self) -> usize {
        self.n
    }
    pub fn a(&self) -> &Mat<T> {
        &self.a
    }
    pub fn b(&self) -> &Mat<T> {
        &self.b
    }
    pub fn u(&self) -> &Mat<T> {
        &self.u
    }
    pub fn v(&self) -> &Mat<T> {
        &self.v
    }
    pub fn x(&self) -> &Mat<T> {
        &self.x
    }
    pub fn y(&self) -> &Mat<T> {
        &self.y
    }

    pub fn mats(&self) -> [&Mat<T>; 6] {
        [&self.a, &self.b, &self.u, &self.v, &self.x, &self.y]
    }

    /// Replaces the operand with the same role as `m`.
    pub fn with(mut self, m: Mat<T>) -> Result<Self> {
        check_dim(self.n, m.n())?;
        match m.role() {
            Role::A => self.a = m,
            Role::B => self.b = m,
            Role::U => self.u = m,
            Role::V => self.v = m,
            Role::X => self.x = m,
            Role::Y => self.y = m,
            other => return Err(Error::Parse(format!("`{other}` is not an input matrix"))),
        }
        Ok(self)
    }

    pub fn map<S: Scalar>(&self, f: impl Fn(&T) -> S + Copy) -> DisjointInputs<S> {
        DisjointInputs {
            n: self.n,
            a: self.a.map(f),
            b: self.b.map(f),
            u: self.u.map(f),
            v: self.v.map(f),
            x: self.x.map(f),
            y: self.y.map(f),
        }
    }
}

/// Dual arrays `c[k][i]`, `w[i][j]`, `z[j][k]`.
#[derive(Debug, Clone, PartialEq)]
pub struct DualTensors<T> {
    n: usize,
    c: Mat<T>,
    w: Mat<T>,
    z: Mat<T>,
}

impl<T: Scalar> DualTensors<T> {
    pub fn new(c: Mat<T>, w: Mat<T>, z: Mat<T>) -> Result<Self> {
        let n = c.n();
        c.expect_role(Role::DualC)?;
        w.expect_role(Role::DualW)?;
        z.expect_role(Role::DualZ)?;
        check_dim(n, w.n())?;
        check_dim(n, z.n())?;
        Ok(Self { n, c, w, z })
    }

    pub fn zeros(n: usize) -> Result<Self> {
        Self::new(
            Mat::zeros(Role::DualC, n)?,
            Mat::zeros(Role::DualW, n)?,
            Mat::zeros(Role::DualZ, n)?,
        )
    }

    pub fn ones(n: usize) -> Result<Self> {
        let one = |role| Mat::from_fn(role, n, |_, _| T::one());
        Self::new(one(Role::DualC)?, one(Role::DualW)?, one(Role::DualZ)?)
    }

    /// Integer entries in `[-range, range]`, drawn in the order c, w, z.
    pub fn random(n: usize, rng: &mut MatrixRng, range: u32) -> Result<Self> {
        Self::new(
            rng.int_matrix(Role::DualC, n, range)?,
            rng.int_matrix(Role::DualW, n, range)?,
            rng.int_matrix(Role::DualZ, n, range)?,
        )
    }

    /// All zero except a single one at positional `(row, col)` of the dual
    /// array `role`.
    pub fn indicator(n: usize, role: Role, row: usize, col: usize) -> Result<Self> {
        if row >= n || col >= n {
            return Err(Error::IndexOutOfRange { row, col, n });
        }
        let make = |r: Role| {
            Mat::from_fn(r, n, |rr, cc| {
                if r == role && rr == row && cc == col {
                    T::one()
                } else {
                    T::zero()
                }
            })
        };
        if !matches!(role, Role::DualC | Role::DualW | Role::DualZ) {
            return Err(Error::RoleMismatch {
                expected: "c, w or z".into(),
                found: role.tag().into(),
            });
        }
        Self::new(make(Role::DualC)?, make(Role::DualW)?, make(Role::DualZ)?)
    }

    pub fn n(&self) -> usize {
        self.n
    }
    pub fn c(&self) -> &Mat<T> {
        &self.c
    }
    pub fn w(&self) -> &Mat<T> {
        &self.w
    }
    pub fn z(&self) -> &Mat<T> {
        &self.z
    }

    pub fn map<S: Scalar>(&self, f: impl Fn(&T) -> S + Copy) -> DualTensors<S> {
        DualTensors {
            n: self.n,
            c: self.c.map(f),
            w: self.w.map(f),
            z: self.z.map(f),
        }
    }

    /// Replaces the dual array with the same role as `m`.
    pub fn with(mut self, m: Mat<T>) -> Result<Self> {
        check_dim(self.n, m.n())?;
        match m.role() {
            Role::DualC => self.c = m,
            Role::DualW => self.w = m,
            Role::DualZ => self.z = m,
            other => return Err(Error::Parse(format!("`{other}` is not a dual array"))),
        }
        Ok(self)
    }
}

/// Outputs `C[i][k] = (AB)_ik`, `W[j][i] = (UV)_ji`, `Z[k][j] = (XY)_kj`
/// together with the number of non-scalar multiplications spent.
#[derive(Debug, Clone, PartialEq)]
pub struct TripleResult<T> {
    pub c: Mat<T>,
    pub w: Mat<T>,
    pub z: Mat<T>,
    pub mult_count: u64,
}

impl<T: Scalar> TripleResult<T> {
    pub fn n(&self) -> usize {
        self.c.n()
    }
}

/// The three products by definition, `3n³` multiplications.
pub fn naive_triple<T: Scalar>(inputs: &DisjointInputs<T>) -> Result<TripleResult<T>> {
    let mut tally = MulTally::new();
    let c = naive_matmul(&inputs.a, &inputs.b, &mut tally)?.with_role(Role::OutC);
    let w = naive_matmul(&inputs.u, &inputs.v, &mut tally)?.with_role(Role::OutW);
    let z = naive_matmul(&inputs.x, &inputs.y, &mut tally)?.with_role(Role::OutZ);
    Ok(TripleResult {
        c,
        w,
        z,
        mult_count: tally.count(),
    })
}

/// `Σ_{i,j,k} (a_ij b_jk c_ki + u_jk v_ki w_ij + x_ki y_ij z_jk)`.
pub fn trace_triple<T: Scalar>(inputs: &DisjointInputs<T>, duals: &DualTensors<T>) -> Result<T> {
    check_dim(inputs.n, duals.n)?;
    let n = inputs.n;
    let DisjointInputs {
        a, b, u, v, x, y, ..
    } = inputs;
    let DualTensors { c, w, z, .. } = duals;
    let mut sum = T::zero();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                sum += &a.at(i, j, k).mul_ref(b.at(i, j, k)).mul_ref(c.at(i, j, k));
                sum += &u.at(i, j, k).mul_ref(v.at(i, j, k)).mul_ref(w.at(i, j, k));
                sum += &x.at(i, j, k).mul_ref(y.at(i, j, k)).mul_ref(z.at(i, j, k));
            }
        }
    }
    Ok(sum)
}
