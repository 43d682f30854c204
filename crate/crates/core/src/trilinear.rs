//! Trilinear aggregation identity for three disjoint matrix products.
//!
//! The left-hand side is the trace form
//!
//! ```text
//! Σ_{i,j,k} (a_ij b_jk c_ki + u_jk v_ki w_ij + x_ki y_ij z_jk)
//! ```
//!
//! and [`eval_rhs_eq1`] evaluates the aggregated right-hand side: `n³`
//! aggregated triple products, the cross terms `T₀ = a_ij v_ki z_jk`,
//! `T₁ = u_jk y_ij c_ki`, `T₂ = x_ki b_jk w_ij`, the per-line corrections
//! `T₀'`, `T₁'`, `T₂'` and six pair sums. It depends on `g`, `h` with
//! `g + h = n` and on a coefficient parameter `q` that enters the
//! corrections as `(q - g)/h²` and `(q - h)/g²`.
//!
//! The two sides agree for every input exactly when `q = n`. For any other
//! `q` they differ by `(q - n)·S`, see [`residual_formula`]. With `q = 1`
//! the identity therefore only holds for `n = 1`.
//!
//! Sums over one index are written with the surviving index as subscript:
//! `a_i = Σ_j a_ij`, `a_j = Σ_i a_ij`, `c_i = Σ_k c_ki`, and so on.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::{check_dim, Axis};
use crate::random::MatrixRng;
use crate::scalar::{format_rational, int, Rational, Scalar};
use crate::triple::{trace_triple, DisjointInputs, DualTensors};

/// Whether the cross terms `T₀`, `T₁`, `T₂` are subtracted.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CrossTerms {
    Included,
    Omitted,
}

/// `(n, g, h, q)` with `g + h = n` and `g, h ≠ 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityParams {
    n: usize,
    g: Rational,
    h: Rational,
    q: Rational,
}

impl IdentityParams {
    /// Sets `h = n - g`.
    pub fn new(n: usize, g: Rational, q: Rational) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParams("n must be at least 1".into()));
        }
        let h = int(n as i64) - &g;
        if g == int(0) {
            return Err(Error::InvalidParams("g must be nonzero".into()));
        }
        if h == int(0) {
            return Err(Error::InvalidParams(format!(
                "h = n - g must be nonzero (n = {n}, g = {})",
                format_rational(&g)
            )));
        }
        Ok(Self { n, g, h, q })
    }

    /// The parameters for which the identity holds: `q = n`.
    pub fn corrected(n: usize, g: Rational) -> Result<Self> {
        Self::new(n, g, int(n as i64))
    }

    pub fn with_q(&self, q: Rational) -> Self {
        Self { q, ..self.clone() }
    }

    pub fn n(&self) -> usize {
        self.n
    }
    pub fn g(&self) -> &Rational {
        &self.g
    }
    pub fn h(&self) -> &Rational {
        &self.h
    }
    pub fn q(&self) -> &Rational {
        &self.q
    }
}

/// Single-index sums of all nine arrays.
struct Margins<T> {
    a_i: Vec<T>,
    a_j: Vec<T>,
    b_j: Vec<T>,
    b_k: Vec<T>,
    u_j: Vec<T>,
    u_k: Vec<T>,
    v_k: Vec<T>,
    v_i: Vec<T>,
    x_k: Vec<T>,
    x_i: Vec<T>,
    y_i: Vec<T>,
    y_j: Vec<T>,
    c_k: Vec<T>,
    c_i: Vec<T>,
    w_i: Vec<T>,
    w_j: Vec<T>,
    z_j: Vec<T>,
    z_k: Vec<T>,
}

impl<T: Scalar> Margins<T> {
    fn new(inputs: &DisjointInputs<T>, duals: &DualTensors<T>) -> Self {
        use Axis::*;
        Self {
            a_i: inputs.a().sum_over(J),
            a_j: inputs.a().sum_over(I),
            b_j: inputs.b().sum_over(K),
            b_k: inputs.b().sum_over(J),
            u_j: inputs.u().sum_over(K),
            u_k: inputs.u().sum_over(J),
            v_k: inputs.v().sum_over(I),
            v_i: inputs.v().sum_over(K),
            x_k: inputs.x().sum_over(I),
            x_i: inputs.x().sum_over(K),
            y_i: inputs.y().sum_over(J),
            y_j: inputs.y().sum_over(I),
            c_k: duals.c().sum_over(I),
            c_i: duals.c().sum_over(K),
            w_i: duals.w().sum_over(J),
            w_j: duals.w().sum_over(I),
            z_j: duals.z().sum_over(K),
            z_k: duals.z().sum_over(J),
        }
    }
}

fn check_dims<T: Scalar>(
    n: usize,
    inputs: &DisjointInputs<T>,
    duals: &DualTensors<T>,
) -> Result<()> {
    check_dim(n, inputs.n())?;
    check_dim(n, duals.n())
}

fn prod3<T: Scalar>(p: &T, q: &T, r: &T) -> T {
    p.mul_ref(q).mul_ref(r)
}

fn sum3<T: Scalar>(p: &T, q: &T, r: &T) -> T {
    p.add_ref(q).add_ref(r)
}

/// Both sides of the pointwise aggregation lemma
///
/// ```text
/// abc + uvw + xyz = (a+u+x)(b+v+y)(c+w+z)
///     - [ay(c+w+z) + ub(w+z+c) + xv(z+c+w)]
///     - [a(b+v)w + u(v+y)z + x(y+b)c + (a+u)vc + (u+x)yw + (x+a)bz]
///     - [avz + uyc + xbw]
/// ```
///
/// returned as `(lhs, rhs)`.
#[allow(clippy::too_many_arguments)]
pub fn eval_scalar_identity<T: Scalar>(
    a: &T,
    b: &T,
    c: &T,
    u: &T,
    v: &T,
    w: &T,
    x: &T,
    y: &T,
    z: &T,
) -> (T, T) {
    let lhs = sum3(&prod3(a, b, c), &prod3(u, v, w), &prod3(x, y, z));

    let duals = sum3(c, w, z);
    let mut rhs = prod3(&sum3(a, u, x), &sum3(b, v, y), &duals);

    let mut pairs = prod3(a, y, &duals);
    pairs += &prod3(u, b, &duals);
    pairs += &prod3(x, v, &duals);
    rhs -= &pairs;

    let mut mixed = prod3(a, &b.add_ref(v), w);
    mixed += &prod3(u, &v.add_ref(y), z);
    mixed += &prod3(x, &y.add_ref(b), c);
    mixed += &prod3(&a.add_ref(u), v, c);
    mixed += &prod3(&u.add_ref(x), y, w);
    mixed += &prod3(&x.add_ref(a), b, z);
    rhs -= &mixed;

    rhs -= &sum3(&prod3(a, v, z), &prod3(u, y, c), &prod3(x, b, w));
    (lhs, rhs)
}

/// Aggregated right-hand side of the trilinear identity.
///
/// With [`CrossTerms::Omitted`] the `-T₀ - T₁ - T₂` contribution is skipped,
/// which is the form the bilinear algorithm is read off from.
pub fn eval_rhs_eq1<T: Scalar>(
    params: &IdentityParams,
    inputs: &DisjointInputs<T>,
    duals: &DualTensors<T>,
    cross: CrossTerms,
) -> Result<T> {
    let n = params.n;
    check_dims(n, inputs, duals)?;
    let g = T::from_rational(&params.g);
    let h = T::from_rational(&params.h);
    let q = T::from_rational(&params.q);
    let inv_g = T::one().div_ref(&g);
    let inv_h = T::one().div_ref(&h);
    // (q - g)/h² and (q - h)/g²
    let coef_h = q.sub_ref(&g).div_ref(&h.mul_ref(&h));
    let coef_g = q.sub_ref(&h).div_ref(&g.mul_ref(&g));

    let (a, b, u, v, x, y) = (
        inputs.a(),
        inputs.b(),
        inputs.u(),
        inputs.v(),
        inputs.x(),
        inputs.y(),
    );
    let (c, w, z) = (duals.c(), duals.w(), duals.z());
    let m = Margins::new(inputs, duals);

    let mut total = T::zero();

    // Σ_{i,j,k} [(a+u+x)(b+v+y)(c+w+z) - T₀ - T₁ - T₂]
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let left = sum3(a.at(i, j, k), u.at(i, j, k), x.at(i, j, k));
                let right = sum3(b.at(i, j, k), v.at(i, j, k), y.at(i, j, k));
                let dual = sum3(c.at(i, j, k), w.at(i, j, k), z.at(i, j, k));
                total += &prod3(&left, &right, &dual);
                if cross == CrossTerms::Included {
                    total -= &prod3(a.at(i, j, k), v.at(i, j, k), z.at(i, j, k));
                    total -= &prod3(u.at(i, j, k), y.at(i, j, k), c.at(i, j, k));
                    total -= &prod3(x.at(i, j, k), b.at(i, j, k), w.at(i, j, k));
                }
            }
        }
    }

    // T₀' = Σ_i [(a_i/h + x_i/g)(y_i/h + v_i/g)(g w_i + h c_i)
    //            + (q-g)/h² a_i y_i w_i + (q-h)/g² x_i v_i c_i]
    for i in 0..n {
        let left = m.a_i[i].mul_ref(&inv_h).add_ref(&m.x_i[i].mul_ref(&inv_g));
        let right = m.y_i[i].mul_ref(&inv_h).add_ref(&m.v_i[i].mul_ref(&inv_g));
        let dual = g.mul_ref(&m.w_i[i]).add_ref(&h.mul_ref(&m.c_i[i]));
        total += &prod3(&left, &right, &dual);
        total += &coef_h.mul_ref(&prod3(&m.a_i[i], &m.y_i[i], &m.w_i[i]));
        total += &coef_g.mul_ref(&prod3(&m.x_i[i], &m.v_i[i], &m.c_i[i]));
    }

    // T₁' = Σ_j [(a_j/g + u_j/h)(y_j/g + b_j/h)(h w_j + g z_j)
    //            + (q-h)/g² a_j y_j w_j + (q-g)/h² u_j b_j z_j]
    for j in 0..n {
        let left = m.a_j[j].mul_ref(&inv_g).add_ref(&m.u_j[j].mul_ref(&inv_h));
        let right = m.y_j[j].mul_ref(&inv_g).add_ref(&m.b_j[j].mul_ref(&inv_h));
        let dual = h.mul_ref(&m.w_j[j]).add_ref(&g.mul_ref(&m.z_j[j]));
        total += &prod3(&left, &right, &dual);
        total += &coef_g.mul_ref(&prod3(&m.a_j[j], &m.y_j[j], &m.w_j[j]));
        total += &coef_h.mul_ref(&prod3(&m.u_j[j], &m.b_j[j], &m.z_j[j]));
    }

    // T₂' = Σ_k [(x_k/h + u_k/g)(v_k/h + b_k/g)(g c_k + h z_k)
    //            + (q-g)/h² x_k v_k c_k + (q-h)/g² u_k b_k z_k]
    for k in 0..n {
        let left = m.x_k[k].mul_ref(&inv_h).add_ref(&m.u_k[k].mul_ref(&inv_g));
        let right = m.v_k[k].mul_ref(&inv_h).add_ref(&m.b_k[k].mul_ref(&inv_g));
        let dual = g.mul_ref(&m.c_k[k]).add_ref(&h.mul_ref(&m.z_k[k]));
        total += &prod3(&left, &right, &dual);
        total += &coef_h.mul_ref(&prod3(&m.x_k[k], &m.v_k[k], &m.c_k[k]));
        total += &coef_g.mul_ref(&prod3(&m.u_k[k], &m.b_k[k], &m.z_k[k]));
    }

    // The six pair sums.
    for i in 0..n {
        for j in 0..n {
            let (aij, yij, wij) = (a.at(i, j, 0), y.at(i, j, 0), w.at(i, j, 0));
            total -= &prod3(
                &aij.add_ref(&m.x_i[i].mul_ref(&inv_g)),
                &yij.add_ref(&m.v_i[i].mul_ref(&inv_g)),
                &g.mul_ref(wij).add_ref(&m.c_i[i]),
            );
            total -= &prod3(
                &aij.add_ref(&m.u_j[j].mul_ref(&inv_h)),
                &yij.add_ref(&m.b_j[j].mul_ref(&inv_h)),
                &h.mul_ref(wij).add_ref(&m.z_j[j]),
            );
        }
    }
    for j in 0..n {
        for k in 0..n {
            let (ujk, bjk, zjk) = (u.at(0, j, k), b.at(0, j, k), z.at(0, j, k));
            total -= &prod3(
                &ujk.add_ref(&m.a_j[j].mul_ref(&inv_g)),
                &bjk.add_ref(&m.y_j[j].mul_ref(&inv_g)),
                &g.mul_ref(zjk).add_ref(&m.w_j[j]),
            );
            total -= &prod3(
                &ujk.add_ref(&m.x_k[k].mul_ref(&inv_h)),
                &bjk.add_ref(&m.v_k[k].mul_ref(&inv_h)),
                &h.mul_ref(zjk).add_ref(&m.c_k[k]),
            );
        }
    }
    for k in 0..n {
        for i in 0..n {
            let (xki, vki, cki) = (x.at(i, 0, k), v.at(i, 0, k), c.at(i, 0, k));
            total -= &prod3(
                &xki.add_ref(&m.u_k[k].mul_ref(&inv_g)),
                &vki.add_ref(&m.b_k[k].mul_ref(&inv_g)),
                &g.mul_ref(cki).add_ref(&m.z_k[k]),
            );
            total -= &prod3(
                &xki.add_ref(&m.a_i[i].mul_ref(&inv_h)),
                &vki.add_ref(&m.y_i[i].mul_ref(&inv_h)),
                &h.mul_ref(cki).add_ref(&m.w_i[i]),
            );
        }
    }

    Ok(total)
}

/// The summed lemma, split into its four printed parts.
#[derive(Debug, Clone, PartialEq)]
pub struct Eq3Groups<T> {
    /// `Σ_{i,j,k} (a+u+x)(b+v+y)(c+w+z)`
    pub product: T,
    /// Pair terms `a_ij y_ij`, `u_jk b_jk`, `x_ki v_ki` (already negated).
    pub group_a: T,
    /// Mixed terms (already negated).
    pub group_b: T,
    /// Cross terms `T₀`, `T₁`, `T₂` (already negated).
    pub group_c: T,
}

impl<T: Scalar> Eq3Groups<T> {
    pub fn total(&self) -> T {
        self.product
            .add_ref(&self.group_a)
            .add_ref(&self.group_b)
            .add_ref(&self.group_c)
    }
}

/// The pointwise lemma summed over `i, j, k`, evaluated group by group.
/// Equal to the trace form for all inputs.
pub fn eval_rhs_eq3<T: Scalar>(inputs: &DisjointInputs<T>, duals: &DualTensors<T>) -> Result<T> {
    eval_eq3_groups(inputs, duals).map(|g| g.total())
}

pub fn eval_eq3_groups<T: Scalar>(
    inputs: &DisjointInputs<T>,
    duals: &DualTensors<T>,
) -> Result<Eq3Groups<T>> {
    let n = inputs.n();
    check_dims(n, inputs, duals)?;
    let (a, b, u, v, x, y) = (
        inputs.a(),
        inputs.b(),
        inputs.u(),
        inputs.v(),
        inputs.x(),
        inputs.y(),
    );
    let (c, w, z) = (duals.c(), duals.w(), duals.z());
    let range = || 0..n;

    let mut product = T::zero();
    let mut group_c = T::zero();
    for i in range() {
        for j in range() {
            for k in range() {
                let left = sum3(a.at(i, j, k), u.at(i, j, k), x.at(i, j, k));
                let right = sum3(b.at(i, j, k), v.at(i, j, k), y.at(i, j, k));
                let dual = sum3(c.at(i, j, k), w.at(i, j, k), z.at(i, j, k));
                product += &prod3(&left, &right, &dual);
                group_c -= &prod3(a.at(i, j, k), v.at(i, j, k), z.at(i, j, k));
                group_c -= &prod3(u.at(i, j, k), y.at(i, j, k), c.at(i, j, k));
                group_c -= &prod3(x.at(i, j, k), b.at(i, j, k), w.at(i, j, k));
            }
        }
    }

    // Inner single-index sum of a closure.
    let inner = |f: &dyn Fn(usize) -> T| {
        range().fold(T::zero(), |mut acc, t| {
            acc += &f(t);
            acc
        })
    };

    let mut group_a = T::zero();
    let mut group_b = T::zero();
    // Terms indexed by (i, j): a_ij y_ij, a_ij w_ij, y_ij w_ij.
    for i in range() {
        for j in range() {
            let (aij, yij, wij) = (a.at(i, j, 0), y.at(i, j, 0), w.at(i, j, 0));
            group_a -= &aij
                .mul_ref(yij)
                .mul_ref(&inner(&|k| sum3(c.at(i, j, k), wij, z.at(i, j, k))));
            group_b -= &aij
                .mul_ref(&inner(&|k| b.at(i, j, k).add_ref(v.at(i, j, k))))
                .mul_ref(wij);
            group_b -= &inner(&|k| u.at(i, j, k).add_ref(x.at(i, j, k)))
                .mul_ref(yij)
                .mul_ref(wij);
        }
    }
    // Terms indexed by (j, k).
    for j in range() {
        for k in range() {
            let (ujk, bjk, zjk) = (u.at(0, j, k), b.at(0, j, k), z.at(0, j, k));
            group_a -= &ujk
                .mul_ref(bjk)
                .mul_ref(&inner(&|i| sum3(w.at(i, j, k), zjk, c.at(i, j, k))));
            group_b -= &ujk
                .mul_ref(&inner(&|i| v.at(i, j, k).add_ref(y.at(i, j, k))))
                .mul_ref(zjk);
            group_b -= &inner(&|i| x.at(i, j, k).add_ref(a.at(i, j, k)))
                .mul_ref(bjk)
                .mul_ref(zjk);
        }
    }
    // Terms indexed by (k, i).
    for k in range() {
        for i in range() {
            let (xki, vki, cki) = (x.at(i, 0, k), v.at(i, 0, k), c.at(i, 0, k));
            group_a -= &xki
                .mul_ref(vki)
                .mul_ref(&inner(&|j| sum3(z.at(i, j, k), cki, w.at(i, j, k))));
            group_b -= &xki
                .mul_ref(&inner(&|j| y.at(i, j, k).add_ref(b.at(i, j, k))))
                .mul_ref(cki);
            group_b -= &inner(&|j| a.at(i, j, k).add_ref(u.at(i, j, k)))
                .mul_ref(vki)
                .mul_ref(cki);
        }
    }

    Ok(Eq3Groups {
        product,
        group_a,
        group_b,
        group_c,
    })
}

/// The factor `S` multiplying `(q - n)` in the residual:
///
/// ```text
/// S = Σ_i [a_i y_i w_i / h² + x_i v_i c_i / g²]
///   + Σ_j [a_j y_j w_j / g² + u_j b_j z_j / h²]
///   + Σ_k [x_k v_k c_k / h² + u_k b_k z_k / g²]
/// ```
pub fn residual_factor<T: Scalar>(
    params: &IdentityParams,
    inputs: &DisjointInputs<T>,
    duals: &DualTensors<T>,
) -> Result<T> {
    let n = params.n;
    check_dims(n, inputs, duals)?;
    let g = T::from_rational(&params.g);
    let h = T::from_rational(&params.h);
    let inv_g2 = T::one().div_ref(&g.mul_ref(&g));
    let inv_h2 = T::one().div_ref(&h.mul_ref(&h));
    let m = Margins::new(inputs, duals);
    let mut s = T::zero();
    for t in 0..n {
        s += &inv_h2.mul_ref(&prod3(&m.a_i[t], &m.y_i[t], &m.w_i[t]));
        s += &inv_g2.mul_ref(&prod3(&m.x_i[t], &m.v_i[t], &m.c_i[t]));
        s += &inv_g2.mul_ref(&prod3(&m.a_j[t], &m.y_j[t], &m.w_j[t]));
        s += &inv_h2.mul_ref(&prod3(&m.u_j[t], &m.b_j[t], &m.z_j[t]));
        s += &inv_h2.mul_ref(&prod3(&m.x_k[t], &m.v_k[t], &m.c_k[t]));
        s += &inv_g2.mul_ref(&prod3(&m.u_k[t], &m.b_k[t], &m.z_k[t]));
    }
    Ok(s)
}

/// `(q - n)·S`: the exact amount by which the aggregated right-hand side
/// (cross terms included) exceeds the trace form.
pub fn residual_formula<T: Scalar>(
    params: &IdentityParams,
    inputs: &DisjointInputs<T>,
    duals: &DualTensors<T>,
) -> Result<T> {
    let s = residual_factor(params, inputs, duals)?;
    let excess = T::from_rational(&(params.q.clone() - int(params.n as i64)));
    Ok(excess.mul_ref(&s))
}

/// Outcome of a randomized exact verification campaign.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub n: usize,
    #[serde(serialize_with = "crate::scalar::serde_str::one")]
    pub g: Rational,
    #[serde(serialize_with = "crate::scalar::serde_str::one")]
    pub h: Rational,
    #[serde(serialize_with = "crate::scalar::serde_str::one")]
    pub q: Rational,
    pub trials: u64,
    pub seed: u64,
    pub range: u32,
    #[serde(serialize_with = "crate::scalar::serde_str::one")]
    pub max_abs_residual: Rational,
    pub pass: bool,
    /// Right-hand side minus trace form, per trial.
    #[serde(serialize_with = "crate::scalar::serde_str::many")]
    pub per_trial: Vec<Rational>,
}

impl VerificationReport {
    pub fn nonzero_trials(&self) -> usize {
        self.per_trial.iter().filter(|r| **r != int(0)).count()
    }
}

/// Inputs and duals for trial `trial` of a campaign.
pub fn trial_instance(
    n: usize,
    seed: u64,
    trial: u64,
    range: u32,
) -> Result<(DisjointInputs<Rational>, DualTensors<Rational>)> {
    let mut rng = MatrixRng::for_trial(seed, trial);
    let inputs = DisjointInputs::random(n, &mut rng, range)?;
    let duals = DualTensors::random(n, &mut rng, range)?;
    Ok((inputs, duals))
}

/// Evaluates the aggregated right-hand side (cross terms included) against
/// the trace form on `trials` random integer instances, exactly.
pub fn verify_identity(
    n: usize,
    g: Rational,
    q: Rational,
    trials: u64,
    seed: u64,
    range: u32,
) -> Result<VerificationReport> {
    let params = IdentityParams::new(n, g, q)?;
    if trials == 0 {
        return Err(Error::InvalidParams("trials must be at least 1".into()));
    }
    // Trials are independent; collect keeps trial order.
    let per_trial = (0..trials)
        .into_par_iter()
        .map(|t| {
            let (inputs, duals) = trial_instance(n, seed, t, range)?;
            let rhs = eval_rhs_eq1(&params, &inputs, &duals, CrossTerms::Included)?;
            Ok(rhs - trace_triple(&inputs, &duals)?)
        })
        .collect::<Result<Vec<Rational>>>()?;
    let max_abs_residual = per_trial
        .iter()
        .map(num_traits::Signed::abs)
        .max()
        .unwrap_or_else(|| int(0));
    let pass = max_abs_residual == int(0);
    Ok(VerificationReport {
        n,
        g: params.g,
        h: params.h,
        q: params.q,
        trials,
        seed,
        range,
        max_abs_residual,
        pass,
        per_trial,
    })
}
