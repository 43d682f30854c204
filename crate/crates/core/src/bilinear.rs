//! Bilinear algorithm for the three disjoint products with `g = 1`,
//! `h = n - 1`, `q = n`.
//!
//! Every product below multiplies two linear forms of the inputs, written
//! with the single-index sums `a_i = Σ_j a_ij`, `a_j = Σ_i a_ij`, etc.:
//!
//! ```text
//! P_ijk   = (a_ij + u_jk + x_ki)(b_jk + v_ki + y_ij)                 n³
//!
//! P⁰_ij   = (a_ij + x_i)(y_ij + v_i)                                 n² each
//! P¹_ij   = (a_ij + u_j/(n-1))(y_ij + b_j/(n-1))
//! P²_jk   = (u_jk + a_j)(b_jk + y_j)
//! P³_jk   = (u_jk + x_k/(n-1))(b_jk + v_k/(n-1))
//! P⁴_ki   = (x_ki + u_k)(v_ki + b_k)
//! P⁵_ki   = (x_ki + a_i/(n-1))(v_ki + y_i/(n-1))
//!
//! P⁰_i    = (a_i/(n-1) + x_i)(y_i/(n-1) + v_i)                       n each
//! P¹_i    = a_i y_i / (n-1)
//! P²_i    = x_i v_i
//! P³_j    = (a_j + u_j/(n-1))(y_j + b_j/(n-1))
//! P⁴_j    = a_j y_j
//! P⁵_j    = u_j b_j / (n-1)
//! P⁶_k    = (x_k/(n-1) + u_k)(v_k/(n-1) + b_k)
//! P⁷_k    = x_k v_k / (n-1)
//! P⁸_k    = u_k b_k
//! ```
//!
//! The outputs are the coefficients of `c_ki`, `w_ij`, `z_jk` in the
//! aggregated identity with the cross terms dropped:
//!
//! ```text
//! C_ik = Σ_j (P_ijk - P⁰_ij - P³_jk) - P⁴_ki - (n-1) P⁵_ki + (n-1) P⁰_i + P²_i + P⁶_k + P⁷_k
//! W_ji = Σ_k (P_ijk - P²_jk - P⁵_ki) - P⁰_ij - (n-1) P¹_ij + P⁰_i + P¹_i + (n-1) P³_j + P⁴_j
//! Z_kj = Σ_i (P_ijk - P¹_ij - P⁴_ki) - P²_jk - (n-1) P³_jk + P³_j + P⁵_j + (n-1) P⁶_k + P⁸_k
//! ```
//!
//! Dropping the cross terms leaves `C = AB + YU`, `W = UV + BX`,
//! `Z = XY + VA`. [`Mode::Corrected`] subtracts those three products,
//! computed directly.
//!
//! The line products `P¹_i`, `P⁵_j`, `P⁷_k` carry their `1/(n-1)`
//! coefficient; the remaining dual-sum factor of each line term is what
//! places the product into the output, so it is not part of the product.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::matrix::{check_dim, naive_matmul, Axis, Mat, MulTally, Role};
use crate::scalar::{int, Rational, Scalar};
use crate::trilinear::{eval_rhs_eq1, CrossTerms, IdentityParams};
use crate::triple::{DisjointInputs, DualTensors, TripleResult};

/// Number of non-scalar products: `n³ + 6n² + 9n`.
pub fn product_count(n: u64) -> u64 {
    n * n * n + 6 * n * n + 9 * n
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    /// Products and combinations only; outputs still contain `YU`, `BX`, `VA`.
    Raw,
    /// Raw outputs with the three cross products subtracted.
    Corrected,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Raw => "raw",
            Mode::Corrected => "corrected",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "raw" => Ok(Mode::Raw),
            "corrected" => Ok(Mode::Corrected),
            other => Err(Error::Parse(format!(
                "unknown mode `{other}` (expected raw or corrected)"
            ))),
        }
    }
}

/// Which of the three outputs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Output {
    C,
    W,
    Z,
}

impl Output {
    pub const ALL: [Output; 3] = [Output::C, Output::W, Output::Z];

    /// The dual array whose coefficients give this output.
    pub fn dual_role(self) -> Role {
        match self {
            Output::C => Role::DualC,
            Output::W => Role::DualW,
            Output::Z => Role::DualZ,
        }
    }
}

/// All non-scalar products of the algorithm.
///
/// Pair families are stored as `n × n` matrices in their natural index
/// order: `pair[0..2]` by `(i, j)`, `pair[2..4]` by `(j, k)`, `pair[4..6]`
/// by `(k, i)`. Line families `line[0..3]` are indexed by `i`,
/// `line[3..6]` by `j`, `line[6..9]` by `k`.
#[derive(Debug, Clone, PartialEq)]
pub struct ProductSet<T> {
    n: usize,
    /// `full[(i * n + j) * n + k] = P_ijk`
    full: Vec<T>,
    pair: [Mat<T>; 6],
    line: [Vec<T>; 9],
    mult_count: u64,
}

impl<T: Scalar> ProductSet<T> {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn mult_count(&self) -> u64 {
        self.mult_count
    }

    #[inline]
    pub fn full(&self, i: usize, j: usize, k: usize) -> &T {
        &self.full[(i * self.n + j) * self.n + k]
    }

    /// `P^(family)` at its natural index pair, `family` in `0..6`.
    pub fn pair(&self, family: usize) -> &Mat<T> {
        &self.pair[family]
    }

    /// `P^(family)` line vector, `family` in `0..9`.
    pub fn line(&self, family: usize) -> &[T] {
        &self.line[family]
    }
}

fn sum2<T: Scalar>(p: &T, q: &T) -> T {
    p.add_ref(q)
}

/// Evaluates all `n³ + 6n² + 9n` products.
pub fn compute_products<T: Scalar>(inputs: &DisjointInputs<T>) -> Result<ProductSet<T>> {
    use Axis::*;
    let n = inputs.n();
    if n < 2 {
        return Err(Error::UnsupportedDimension(n));
    }
    let (a, b, u, v, x, y) = (
        inputs.a(),
        inputs.b(),
        inputs.u(),
        inputs.v(),
        inputs.x(),
        inputs.y(),
    );
    let nm1 = T::from_i64(n as i64 - 1);
    let inv = T::one().div_ref(&nm1);
    let scaled = |xs: Vec<T>| -> Vec<T> { xs.into_iter().map(|e| e.mul_ref(&inv)).collect() };

    let (a_i, a_j) = (a.sum_over(J), a.sum_over(I));
    let (b_j, b_k) = (b.sum_over(K), b.sum_over(J));
    let (u_j, u_k) = (u.sum_over(K), u.sum_over(J));
    let (v_k, v_i) = (v.sum_over(I), v.sum_over(K));
    let (x_k, x_i) = (x.sum_over(I), x.sum_over(K));
    let (y_i, y_j) = (y.sum_over(J), y.sum_over(I));
    // Sums divided by n - 1.
    let (a_i_s, y_i_s) = (scaled(a_i.clone()), scaled(y_i.clone()));
    let (u_j_s, b_j_s) = (scaled(u_j.clone()), scaled(b_j.clone()));
    let (x_k_s, v_k_s) = (scaled(x_k.clone()), scaled(v_k.clone()));

    let mut tally = MulTally::new();

    let mut full = Vec::with_capacity(n * n * n);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let left = sum2(a.at(i, j, k), u.at(i, j, k)).add_ref(x.at(i, j, k));
                let right = sum2(b.at(i, j, k), v.at(i, j, k)).add_ref(y.at(i, j, k));
                full.push(tally.mul(&left, &right));
            }
        }
    }

    let pair = {
        let mut pair_family = |f: &dyn Fn(usize, usize) -> (T, T)| -> Result<Mat<T>> {
            Mat::from_fn(Role::Plain, n, |r, c| {
                let (l, rr) = f(r, c);
                tally.mul(&l, &rr)
            })
        };
        let p0 = pair_family(&|i, j| (sum2(a.get(i, j), &x_i[i]), sum2(y.get(i, j), &v_i[i])))?;
        let p1 = pair_family(&|i, j| (sum2(a.get(i, j), &u_j_s[j]), sum2(y.get(i, j), &b_j_s[j])))?;
        let p2 = pair_family(&|j, k| (sum2(u.get(j, k), &a_j[j]), sum2(b.get(j, k), &y_j[j])))?;
        let p3 = pair_family(&|j, k| (sum2(u.get(j, k), &x_k_s[k]), sum2(b.get(j, k), &v_k_s[k])))?;
        let p4 = pair_family(&|k, i| (sum2(x.get(k, i), &u_k[k]), sum2(v.get(k, i), &b_k[k])))?;
        let p5 = pair_family(&|k, i| (sum2(x.get(k, i), &a_i_s[i]), sum2(v.get(k, i), &y_i_s[i])))?;
        [p0, p1, p2, p3, p4, p5]
    };

    let mut line_family = |f: &dyn Fn(usize) -> (T, T), coef: Option<&T>| -> Vec<T> {
        (0..n)
            .map(|t| {
                let (l, r) = f(t);
                let p = tally.mul(&l, &r);
                match coef {
                    Some(c) => p.mul_ref(c),
                    None => p,
                }
            })
            .collect()
    };
    let l0 = line_family(
        &|i| (sum2(&a_i_s[i], &x_i[i]), sum2(&y_i_s[i], &v_i[i])),
        None,
    );
    let l1 = line_family(&|i| (a_i[i].clone(), y_i[i].clone()), Some(&inv));
    let l2 = line_family(&|i| (x_i[i].clone(), v_i[i].clone()), None);
    let l3 = line_family(
        &|j| (sum2(&a_j[j], &u_j_s[j]), sum2(&y_j[j], &b_j_s[j])),
        None,
    );
    let l4 = line_family(&|j| (a_j[j].clone(), y_j[j].clone()), None);
    let l5 = line_family(&|j| (u_j[j].clone(), b_j[j].clone()), Some(&inv));
    let l6 = line_family(
        &|k| (sum2(&x_k_s[k], &u_k[k]), sum2(&v_k_s[k], &b_k[k])),
        None,
    );
    let l7 = line_family(&|k| (x_k[k].clone(), v_k[k].clone()), Some(&inv));
    let l8 = line_family(&|k| (u_k[k].clone(), b_k[k].clone()), None);

    Ok(ProductSet {
        n,
        full,
        pair,
        line: [l0, l1, l2, l3, l4, l5, l6, l7, l8],
        mult_count: tally.count(),
    })
}

/// Linear combination of the stored products into the raw outputs. Uses
/// only additions and multiplications by the constant `n - 1`.
///
/// Summations run in a fixed sequential order so float results are
/// reproducible.
pub fn combine_outputs<T: Scalar>(products: &ProductSet<T>, n: usize) -> Result<TripleResult<T>> {
    check_dim(n, products.n)?;
    let nm1 = T::from_i64(n as i64 - 1);
    let p = products;
    let [p0, p1, p2, p3, p4, p5] = &p.pair;
    let [l0, l1, l2, l3, l4, l5, l6, l7, l8] = &p.line;

    // C[i][k]
    let c = Mat::from_fn(Role::OutC, n, |i, k| {
        let mut acc = T::zero();
        for j in 0..n {
            acc += p.full(i, j, k);
            acc -= p0.get(i, j);
            acc -= p3.get(j, k);
        }
        acc -= p4.get(k, i);
        acc -= &nm1.mul_ref(p5.get(k, i));
        acc += &nm1.mul_ref(&l0[i]);
        acc += &l2[i];
        acc += &l6[k];
        acc += &l7[k];
        acc
    })?;

    // W[j][i]
    let w = Mat::from_fn(Role::OutW, n, |j, i| {
        let mut acc = T::zero();
        for k in 0..n {
            acc += p.full(i, j, k);
            acc -= p2.get(j, k);
            acc -= p5.get(k, i);
        }
        acc -= p0.get(i, j);
        acc -= &nm1.mul_ref(p1.get(i, j));
        acc += &l0[i];
        acc += &l1[i];
        acc += &nm1.mul_ref(&l3[j]);
        acc += &l4[j];
        acc
    })?;

    // Z[k][j]
    let z = Mat::from_fn(Role::OutZ, n, |k, j| {
        let mut acc = T::zero();
        for i in 0..n {
            acc += p.full(i, j, k);
            acc -= p1.get(i, j);
            acc -= p4.get(k, i);
        }
        acc -= p2.get(j, k);
        acc -= &nm1.mul_ref(p3.get(j, k));
        acc += &l3[j];
        acc += &l5[j];
        acc += &nm1.mul_ref(&l6[k]);
        acc += &l8[k];
        acc
    })?;

    Ok(TripleResult {
        c,
        w,
        z,
        mult_count: p.mult_count,
    })
}

/// The products the raw outputs carry in excess: `dC = YU` as `(i, k)`,
/// `dW = BX` as `(j, i)`, `dZ = VA` as `(k, j)`.
#[derive(Debug, Clone, PartialEq)]
pub struct CrossCorrections<T> {
    pub dc: Mat<T>,
    pub dw: Mat<T>,
    pub dz: Mat<T>,
    pub mult_count: u64,
}

pub fn cross_corrections<T: Scalar>(inputs: &DisjointInputs<T>) -> Result<CrossCorrections<T>> {
    let mut tally = MulTally::new();
    let dc = naive_matmul(inputs.y(), inputs.u(), &mut tally)?.with_role(Role::OutC);
    let dw = naive_matmul(inputs.b(), inputs.x(), &mut tally)?.with_role(Role::OutW);
    let dz = naive_matmul(inputs.v(), inputs.a(), &mut tally)?.with_role(Role::OutZ);
    Ok(CrossCorrections {
        dc,
        dw,
        dz,
        mult_count: tally.count(),
    })
}

/// Runs the algorithm. Raw mode spends `n³ + 6n² + 9n` multiplications;
/// corrected mode adds `3n³` for the cross products and returns `AB`, `UV`,
/// `XY` exactly.
pub fn disjoint_multiply<T: Scalar>(
    inputs: &DisjointInputs<T>,
    mode: Mode,
) -> Result<TripleResult<T>> {
    let n = inputs.n();
    let raw = combine_outputs(&compute_products(inputs)?, n)?;
    match mode {
        Mode::Raw => Ok(raw),
        Mode::Corrected => {
            let fix = cross_corrections(inputs)?;
            Ok(TripleResult {
                c: raw.c.sub(&fix.dc)?,
                w: raw.w.sub(&fix.dw)?,
                z: raw.z.sub(&fix.dz)?,
                mult_count: raw.mult_count + fix.mult_count,
            })
        }
    }
}

/// Output entry `(row, col)` of `which`, read off the aggregated identity
/// (`g = 1`, `q = n`) by setting the matching dual variable to one and all
/// others to zero. `C[i][k]` pairs with `c_ki`, `W[j][i]` with `w_ij`,
/// `Z[k][j]` with `z_jk`.
pub fn extract_output_via_duals(
    inputs: &DisjointInputs<Rational>,
    which: Output,
    row: usize,
    col: usize,
    cross: CrossTerms,
) -> Result<Rational> {
    let n = inputs.n();
    if n < 2 {
        return Err(Error::UnsupportedDimension(n));
    }
    if row >= n || col >= n {
        return Err(Error::IndexOutOfRange { row, col, n });
    }
    // Every output is stored transposed relative to its dual.
    let duals = DualTensors::indicator(n, which.dual_role(), col, row)?;
    let params = IdentityParams::corrected(n, int(1))?;
    eval_rhs_eq1(&params, inputs, &duals, cross)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::MatrixRng;
    use crate::triple::naive_triple;

    fn random_inputs(n: usize, seed: u64) -> DisjointInputs<Rational> {
        DisjointInputs::random(n, &mut MatrixRng::new(seed), 9).unwrap()
    }

    fn output(r: &TripleResult<Rational>, which: Output) -> &Mat<Rational> {
        match which {
            Output::C => &r.c,
            Output::W => &r.w,
            Output::Z => &r.z,
        }
    }

    #[test]
    fn zero_inputs() {
        let inputs = DisjointInputs::<Rational>::zeros(3).unwrap();
        let p = compute_products(&inputs).unwrap();
        assert_eq!(p.mult_count(), 27 + 54 + 27);
        let raw = combine_outputs(&p, 3).unwrap();
        assert!(raw.c.is_zero() && raw.w.is_zero() && raw.z.is_zero());
    }

    #[test]
    fn n2_count_is_50() {
        let p = compute_products(&random_inputs(2, 1)).unwrap();
        assert_eq!(p.mult_count(), 50);
        assert_eq!(product_count(2), 50);
    }

    #[test]
    fn all_ones_full_products() {
        let p = compute_products(&DisjointInputs::<Rational>::ones(2).unwrap()).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    assert_eq!(*p.full(i, j, k), int(9));
                }
            }
        }
    }

    #[test]
    fn n_below_two_unsupported() {
        let inputs = DisjointInputs::<Rational>::ones(1).unwrap();
        assert_eq!(
            compute_products(&inputs).unwrap_err(),
            Error::UnsupportedDimension(1)
        );
        assert!(disjoint_multiply(&inputs, Mode::Corrected).is_err());
        assert!(extract_output_via_duals(&inputs, Output::C, 0, 0, CrossTerms::Included).is_err());
    }

    #[test]
    fn combine_dimension_checked() {
        let p = compute_products(&random_inputs(2, 3)).unwrap();
        assert!(combine_outputs(&p, 3).is_err());
    }

    #[test]
    fn raw_excess_is_cross_products() {
        let inputs = random_inputs(2, 5);
        let raw = combine_outputs(&compute_products(&inputs).unwrap(), 2).unwrap();
        let naive = naive_triple(&inputs).unwrap();
        let t = &mut MulTally::new();
        assert_eq!(
            raw.c.sub(&naive.c).unwrap(),
            naive_matmul(inputs.y(), inputs.u(), t)
                .unwrap()
                .with_role(Role::OutC)
        );
        assert_eq!(
            raw.w.sub(&naive.w).unwrap(),
            naive_matmul(inputs.b(), inputs.x(), t)
                .unwrap()
                .with_role(Role::OutW)
        );
        assert_eq!(
            raw.z.sub(&naive.z).unwrap(),
            naive_matmul(inputs.v(), inputs.a(), t)
                .unwrap()
                .with_role(Role::OutZ)
        );
    }

    #[test]
    fn raw_c_exact_when_u_and_x_vanish() {
        let inputs = random_inputs(2, 6)
            .with(Mat::zeros(Role::U, 2).unwrap())
            .unwrap()
            .with(Mat::zeros(Role::X, 2).unwrap())
            .unwrap();
        let raw = disjoint_multiply(&inputs, Mode::Raw).unwrap();
        assert_eq!(raw.c, naive_triple(&inputs).unwrap().c);
    }

    #[test]
    fn cross_corrections_cases() {
        let zeros = DisjointInputs::<Rational>::zeros(2).unwrap();
        let fix = cross_corrections(&zeros).unwrap();
        assert!(fix.dc.is_zero() && fix.dw.is_zero() && fix.dz.is_zero());

        let fix = cross_corrections(&DisjointInputs::<Rational>::ones(2).unwrap()).unwrap();
        for m in [&fix.dc, &fix.dw, &fix.dz] {
            assert!(m.entries().iter().all(|e| *e == int(2)));
        }

        let inputs = random_inputs(3, 8);
        let fix = cross_corrections(&inputs).unwrap();
        assert_eq!(fix.mult_count, 81);
        for k in 0..3 {
            for j in 0..3 {
                let mut s = int(0);
                for i in 0..3 {
                    s += inputs.v().get(k, i) * inputs.a().get(i, j);
                }
                assert_eq!(*fix.dz.get(k, j), s);
            }
        }
    }

    #[test]
    fn corrected_identity_inputs() {
        let r = disjoint_multiply(
            &DisjointInputs::<Rational>::identities(2).unwrap(),
            Mode::Corrected,
        )
        .unwrap();
        for m in [&r.c, &r.w, &r.z] {
            assert_eq!(
                m.entries(),
                Mat::<Rational>::identity(Role::Plain, 2).unwrap().entries()
            );
        }
        assert_eq!(r.mult_count, 50 + 24);
    }

    #[test]
    fn corrected_matches_naive_n3() {
        let inputs = random_inputs(3, 10);
        let r = disjoint_multiply(&inputs, Mode::Corrected).unwrap();
        let naive = naive_triple(&inputs).unwrap();
        assert_eq!((r.c, r.w, r.z), (naive.c, naive.w, naive.z));
        assert_eq!(r.mult_count, product_count(3) + 81);
    }

    #[test]
    fn dual_extraction_matches_combination_and_truth() {
        for n in 2..=3 {
            let inputs = random_inputs(n, 40 + n as u64);
            let raw = disjoint_multiply(&inputs, Mode::Raw).unwrap();
            let naive = naive_triple(&inputs).unwrap();
            for which in Output::ALL {
                for r in 0..n {
                    for c in 0..n {
                        let omitted =
                            extract_output_via_duals(&inputs, which, r, c, CrossTerms::Omitted)
                                .unwrap();
                        assert_eq!(
                            &omitted,
                            output(&raw, which).get(r, c),
                            "{which:?} ({r},{c}) n={n}"
                        );
                        let included =
                            extract_output_via_duals(&inputs, which, r, c, CrossTerms::Included)
                                .unwrap();
                        assert_eq!(&included, output(&naive, which).get(r, c));
                    }
                }
            }
        }
    }

    #[test]
    fn dual_extraction_zero_and_range() {
        let zeros = DisjointInputs::<Rational>::zeros(2).unwrap();
        assert_eq!(
            extract_output_via_duals(&zeros, Output::W, 1, 0, CrossTerms::Included).unwrap(),
            int(0)
        );
        assert_eq!(
            extract_output_via_duals(&zeros, Output::Z, 2, 0, CrossTerms::Included).unwrap_err(),
            Error::IndexOutOfRange {
                row: 2,
                col: 0,
                n: 2
            }
        );
    }

    #[test]
    fn mode_parsing() {
        assert_eq!("raw".parse::<Mode>().unwrap(), Mode::Raw);
        assert_eq!("corrected".parse::<Mode>().unwrap(), Mode::Corrected);
        assert!("fast".parse::<Mode>().is_err());
    }
}
