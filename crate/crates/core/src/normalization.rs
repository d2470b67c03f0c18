//! Diagonal rescaling normalizations of chart parameters: verify exponent
//! tables, solve the weighted-homogeneity system they satisfy, and handle
//! the boundary cases where one parameter vanishes.
//!
//! Half-integer powers of |c| are made exact by adjoining a formal symbol
//! s with s^2 = |c| and tracking sgn(c) as a separate case split.

use num_traits::{One, Zero};

use crate::algebra::{Polynomial, RationalFunction, RingRef, Scalar, VarClass};
use crate::charts::{Chart, ConstVal};
use crate::error::{Error, Result};
use crate::geometry::{
    distribution_equal, pushforward, DiagonalAffineMap, Distribution, VectorField,
};

/// Per-coordinate scaling exponents: factor_i = b^{b_exp[i]} * |c|^{c_exp[i]}.
/// b exponents must be integers; |c| exponents may be half-integers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagonalScaling {
    pub b_exp: Vec<Scalar>,
    pub c_exp: Vec<Scalar>,
}

impl DiagonalScaling {
    pub fn identity(n_coords: usize) -> DiagonalScaling {
        DiagonalScaling {
            b_exp: vec![Scalar::zero(); n_coords],
            c_exp: vec![Scalar::zero(); n_coords],
        }
    }

    pub fn is_identity(&self) -> bool {
        self.b_exp.iter().all(|e| e.is_zero()) && self.c_exp.iter().all(|e| e.is_zero())
    }
}

fn as_integer(x: &Scalar) -> Option<i64> {
    if x.denom() == &num_bigint::BigInt::from(1) {
        x.numer().try_into().ok()
    } else {
        None
    }
}

/// A power of a single ring variable with integer (possibly negative)
/// exponent, as a rational function.
fn var_power(ring: &RingRef, var: usize, e: i64) -> RationalFunction {
    let p = Polynomial::var(ring, var).pow(e.unsigned_abs() as u32);
    if e >= 0 {
        RationalFunction::from_poly(p)
    } else {
        RationalFunction::from_poly(p).recip()
    }
}

/// Adjoin the formal square-root symbol for |c|; harmless when unused.
pub fn sqrt_symbol() -> (String, VarClass) {
    ("s".to_string(), VarClass::Parameter)
}

fn substituted_generators(
    chart: &Chart,
    subs: &[(usize, Polynomial)],
) -> Result<Vec<VectorField>> {
    let ring = chart.ring();
    let d = chart.distribution()?;
    let mut out = Vec::new();
    for g in d.generators() {
        let comps: Vec<Polynomial> = g
            .coeffs()
            .iter()
            .map(|c| {
                let mut p = c.as_polynomial().expect("chart generators are polynomial");
                for (v, val) in subs {
                    p = p.substitute(*v, val);
                }
                p
            })
            .collect();
        out.push(VectorField::from_polys(ring, comps));
    }
    Ok(out)
}

/// Whether any |c| exponent is a strict half-integer, forcing the
/// square-root symbol into the factors.
pub fn needs_sqrt(scaling: &DiagonalScaling) -> bool {
    scaling.c_exp.iter().any(|e| as_integer(e).is_none())
}

/// Push the chart distribution through the diagonal scaling.
///
/// Integer |c| exponents are applied as signed powers of c directly, so
/// one symbolic verification over the fraction field covers both signs
/// of c at once.  Half-integer exponents go through the substitution
/// c = sgn_c * s^2 with factors b^p * s^(2q); the chart's ring must then
/// contain the symbol s.
pub fn apply_scaling(
    chart: &Chart,
    scaling: &DiagonalScaling,
    sgn_c: i64,
) -> Result<Distribution> {
    let ring = chart.ring();
    let n = ring.n_coords();
    assert_eq!(scaling.b_exp.len(), n);
    assert_eq!(scaling.c_exp.len(), n);
    assert!(sgn_c == 1 || sgn_c == -1, "sign tag must be +1 or -1");
    let sqrt_path = needs_sqrt(scaling);

    let b_var = ring.var("b");
    let c_var = ring.var("c");
    let s_var = ring.var("s");

    let mut subs = Vec::new();
    if sqrt_path {
        if let (Some(c), Some(s)) = (c_var, s_var) {
            let s2 = Polynomial::var(ring, s)
                .pow(2)
                .mul_scalar(&Scalar::from_integer(sgn_c.into()));
            subs.push((c, s2));
        } else {
            return Err(Error::InconsistentScaling(
                "half-integer |c| exponents require parameters c and s".to_string(),
            ));
        }
    }
    let gens = substituted_generators(chart, &subs)?;

    let mut scale = Vec::with_capacity(n);
    for i in 0..n {
        let pb = as_integer(&scaling.b_exp[i]).ok_or_else(|| {
            Error::InconsistentScaling(format!(
                "b exponent {} at {} is not an integer",
                crate::algebra::format_scalar(&scaling.b_exp[i]),
                ring.name(i)
            ))
        })?;
        let doubled = scaling.c_exp[i].clone() * Scalar::from_integer(2.into());
        let ps = as_integer(&doubled).ok_or_else(|| {
            Error::InconsistentScaling(format!(
                "|c| exponent {} at {} is not a half-integer",
                crate::algebra::format_scalar(&scaling.c_exp[i]),
                ring.name(i)
            ))
        })?;
        let mut f = RationalFunction::one(ring);
        if pb != 0 {
            let b = b_var.ok_or_else(|| {
                Error::InconsistentScaling("chart has no parameter b".to_string())
            })?;
            f = f.mul(&var_power(ring, b, pb));
        }
        if ps != 0 {
            if sqrt_path {
                let s = s_var.ok_or_else(|| {
                    Error::InconsistentScaling(
                        "ring lacks the square-root symbol s".to_string(),
                    )
                })?;
                f = f.mul(&var_power(ring, s, ps));
            } else {
                let c = c_var.ok_or_else(|| {
                    Error::InconsistentScaling("chart has no parameter c".to_string())
                })?;
                f = f.mul(&var_power(ring, c, ps / 2));
            }
        }
        scale.push(f);
    }
    let map = DiagonalAffineMap::new(ring, scale, vec![Scalar::zero(); n])?;
    let pushed: Result<Vec<VectorField>> = gens.iter().map(|g| pushforward(&map, g)).collect();
    Distribution::new(pushed?)
}

/// The chart distribution with parameters pinned: b = 1 and c = c_value
/// (whichever of them the ring contains).
pub fn target_distribution(chart: &Chart, c_value: i64) -> Result<Distribution> {
    let ring = chart.ring();
    let mut subs = Vec::new();
    if let Some(b) = ring.var("b") {
        subs.push((b, Polynomial::one(ring)));
    }
    if let Some(c) = ring.var("c") {
        subs.push((
            c,
            Polynomial::constant(ring, Scalar::from_integer(c_value.into())),
        ));
    }
    Distribution::new(substituted_generators(chart, &subs)?)
}

/// One scaling axis: weights per coordinate plus the global shift delta,
/// presented as a particular solution and a kernel basis.
#[derive(Clone, Debug)]
pub struct AxisSolution {
    pub param: String,
    /// Length n_coords + 1; last entry is delta.
    pub particular: Vec<Scalar>,
    pub kernel: Vec<Vec<Scalar>>,
}

/// Affine solution sets of the weighted-homogeneity system, one axis per
/// chart parameter.
#[derive(Clone, Debug)]
pub struct ScalingSolutionSet {
    pub axes: Vec<AxisSolution>,
}

impl ScalingSolutionSet {
    pub fn axis(&self, param: &str) -> Option<&AxisSolution> {
        self.axes.iter().find(|a| a.param == param)
    }

    /// The scaling assembled from the particular solutions of the b and
    /// |c| axes (absent axes contribute zero exponents).
    pub fn particular_scaling(&self, n_coords: usize) -> DiagonalScaling {
        let take = |name: &str| -> Vec<Scalar> {
            self.axis(name)
                .map(|a| a.particular[..n_coords].to_vec())
                .unwrap_or_else(|| vec![Scalar::zero(); n_coords])
        };
        DiagonalScaling {
            b_exp: take("b"),
            c_exp: take("c"),
        }
    }
}

/// The weighted-homogeneity equations for one axis: for every monomial mu
/// of every component i of the main generator,
///   sum_j e_j(mu) * w_j  -  w_i  -  delta  =  -beta(mu) * [normalizing]
/// where beta is the parameter exponent in mu.
fn axis_rows(
    chart: &Chart,
    param: usize,
    normalizing: bool,
) -> Vec<Vec<Scalar>> {
    let ring = chart.ring();
    let n = ring.n_coords();
    let w = chart.main_generator();
    let mut rows = Vec::new();
    for i in 0..n {
        let p = w
            .coeff(i)
            .as_polynomial()
            .expect("chart generators are polynomial");
        for (mono, _) in p.terms() {
            // unknowns: w_0..w_{n-1}, delta; augmented rhs last
            let mut row = vec![Scalar::zero(); n + 2];
            for (j, &e) in mono.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if j < n {
                    row[j] = Scalar::from_integer((e as i64).into());
                } else if j == param && normalizing {
                    row[n + 1] = row[n + 1].clone() - Scalar::from_integer((e as i64).into());
                }
            }
            row[i] = row[i].clone() - Scalar::one();
            row[n] = -Scalar::one();
            rows.push(row);
        }
    }
    rows
}

/// Solve an augmented rational system; returns (particular, kernel basis)
/// or None when inconsistent.
fn solve_affine(mut rows: Vec<Vec<Scalar>>, unknowns: usize) -> Option<(Vec<Scalar>, Vec<Vec<Scalar>>)> {
    let nrows = rows.len();
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut rank = 0;
    for col in 0..unknowns {
        let Some(pr) = (rank..nrows).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pr);
        let inv = rows[rank][col].clone().recip();
        for j in col..=unknowns {
            let v = rows[rank][j].clone() * &inv;
            rows[rank][j] = v;
        }
        for i in 0..nrows {
            if i == rank || rows[i][col].is_zero() {
                continue;
            }
            let f = rows[i][col].clone();
            for j in col..=unknowns {
                let v = rows[i][j].clone() - rows[rank][j].clone() * &f;
                rows[i][j] = v;
            }
        }
        pivots.push((rank, col));
        rank += 1;
    }
    for row in rows.iter().skip(rank) {
        if !row[unknowns].is_zero() {
            return None;
        }
    }
    let pivot_cols: Vec<usize> = pivots.iter().map(|&(_, c)| c).collect();
    let mut particular = vec![Scalar::zero(); unknowns];
    for &(r, c) in &pivots {
        particular[c] = rows[r][unknowns].clone();
    }
    let mut kernel = Vec::new();
    for free in 0..unknowns {
        if pivot_cols.contains(&free) {
            continue;
        }
        let mut v = vec![Scalar::zero(); unknowns];
        v[free] = Scalar::one();
        for &(r, c) in &pivots {
            v[c] = -rows[r][free].clone();
        }
        kernel.push(v);
    }
    Some((particular, kernel))
}

/// Solve the weighted-homogeneity system of the chart's main generator.
/// Parameters listed in `normalize` are driven to unit modulus; the rest
/// keep their values.  One independent axis per chart parameter.
pub fn solve_scaling_weights(chart: &Chart, normalize: &[&str]) -> Result<ScalingSolutionSet> {
    let ring = chart.ring();
    let n = ring.n_coords();
    let mut axes = Vec::new();
    for param in chart.parameters() {
        let var = ring
            .var(&param)
            .ok_or_else(|| Error::UnknownVariable(param.clone()))?;
        let rows = axis_rows(chart, var, normalize.contains(&param.as_str()));
        let (particular, kernel) = solve_affine(rows, n + 1).ok_or_else(|| {
            Error::InconsistentScaling(format!(
                "no diagonal scaling normalizes parameter {param}"
            ))
        })?;
        axes.push(AxisSolution {
            param,
            particular,
            kernel,
        });
    }
    Ok(ScalingSolutionSet { axes })
}

/// Whether the given per-coordinate weights (plus delta) satisfy the
/// axis equations; used to certify published exponent tables.
pub fn is_axis_solution(
    chart: &Chart,
    param: &str,
    normalizing: bool,
    weights: &[Scalar],
    delta: &Scalar,
) -> bool {
    let ring = chart.ring();
    let n = ring.n_coords();
    assert_eq!(weights.len(), n);
    let Some(var) = ring.var(param) else {
        return false;
    };
    for row in axis_rows(chart, var, normalizing) {
        let mut acc = Scalar::zero();
        for (j, wj) in weights.iter().enumerate() {
            acc += row[j].clone() * wj;
        }
        acc += row[n].clone() * delta;
        if acc != row[n + 1] {
            return false;
        }
    }
    true
}

/// Which parameter is pinned to zero in a boundary case.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Boundary {
    BZero,
    CZero,
}

/// Rebuild the chart with one symbolic final-step parameter replaced by
/// zero, then normalize the surviving parameter to 1 (verified by the
/// caller via apply_scaling); both parameters zero yields the identity.
pub fn normalize_boundary_cases(
    chart: &Chart,
    which: Boundary,
) -> Result<(Chart, DiagonalScaling)> {
    let dead = match which {
        Boundary::BZero => "b",
        Boundary::CZero => "c",
    };
    let survivor = match which {
        Boundary::BZero => "c",
        Boundary::CZero => "b",
    };
    let mut steps = chart.steps().to_vec();
    for s in steps.iter_mut() {
        for slot in [&mut s.const_x, &mut s.const_y].into_iter().flatten() {
            if matches!(slot, ConstVal::Sym(name) if name == dead) {
                *slot = ConstVal::num(0);
            }
        }
    }
    let boundary = Chart::build(chart.code(), steps, &[sqrt_symbol()])?;
    let n = boundary.ring().n_coords();
    if !boundary.parameters().iter().any(|p| p == survivor) {
        return Ok((boundary, DiagonalScaling::identity(n)));
    }
    let set = solve_scaling_weights(&boundary, &[survivor])?;
    let axis = set
        .axis(survivor)
        .ok_or_else(|| Error::Internal(format!("missing axis for {survivor}")))?;
    let weights = axis.particular[..n].to_vec();
    let zero = vec![Scalar::zero(); n];
    let scaling = match which {
        Boundary::BZero => DiagonalScaling {
            b_exp: zero,
            c_exp: weights,
        },
        Boundary::CZero => DiagonalScaling {
            b_exp: weights,
            c_exp: zero,
        },
    };
    Ok((boundary, scaling))
}

/// Full round-trip check: apply the scaling and compare spans with the
/// parameter-pinned target.  Integer |c| exponents verify symbolically
/// for both signs of c at once against c = 1; the square-root path pins
/// c to sgn_c.
pub fn scaling_normalizes(chart: &Chart, scaling: &DiagonalScaling, sgn_c: i64) -> Result<bool> {
    let pushed = apply_scaling(chart, scaling, sgn_c)?;
    let c_value = if needs_sqrt(scaling) { sgn_c } else { 1 };
    let target = target_distribution(chart, c_value)?;
    Ok(distribution_equal(&pushed, &target))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charts::fixture;
    use crate::geometry::derived_flag;

    fn q(n: i64, d: i64) -> Scalar {
        Scalar::new(n.into(), d.into())
    }

    fn z(n: i64) -> Scalar {
        Scalar::from_integer(n.into())
    }

    fn sfix(name: &str) -> Chart {
        fixture(name, &[sqrt_symbol()]).unwrap()
    }

    /// The published table for (121two)/(121three): integer powers of b
    /// and signed c, in coordinate order t, x0, y0, x1, y1, ..., x5, y5.
    fn table_121two() -> DiagonalScaling {
        let b = [2, 3, 4, 1, 2, 1, 1, 0, 0, 1, 0, 1, 0];
        let c = [1, 1, 1, 0, 0, 1, 0, 1, 0, 0, 1, 0, 1];
        DiagonalScaling {
            b_exp: b.iter().map(|&e| z(e)).collect(),
            c_exp: c.iter().map(|&e| z(e)).collect(),
        }
    }

    /// The published table for (123one): integer powers of b and
    /// half-integer powers of |c| (stored doubled here).
    fn table_123one() -> DiagonalScaling {
        let b = [2, 3, 4, 1, 2, 1, 1, 0, 0, 1, 0, 1, 0];
        let c2 = [-4, -6, -9, -2, -5, -2, -3, 0, -1, -1, 1, 0, 2];
        DiagonalScaling {
            b_exp: b.iter().map(|&e| z(e)).collect(),
            c_exp: c2.iter().map(|&e| q(e, 2)).collect(),
        }
    }

    #[test]
    fn identity_scaling_preserves_distribution() {
        let chart = sfix("121two");
        let id = DiagonalScaling::identity(chart.ring().n_coords());
        let pushed = apply_scaling(&chart, &id, 1).unwrap();
        assert!(distribution_equal(&pushed, &chart.distribution().unwrap()));
    }

    #[test]
    fn table_normalizes_121two_to_unit_parameters() {
        let chart = sfix("121two");
        assert!(scaling_normalizes(&chart, &table_121two(), 1).unwrap());
    }

    #[test]
    fn same_table_normalizes_121three() {
        let chart = sfix("121three");
        assert!(scaling_normalizes(&chart, &table_121two(), 1).unwrap());
    }

    #[test]
    fn table_normalizes_123one_in_both_sign_branches() {
        let chart = sfix("123one");
        let table = table_123one();
        assert!(needs_sqrt(&table));
        assert!(scaling_normalizes(&chart, &table, 1).unwrap());
        assert!(scaling_normalizes(&chart, &table, -1).unwrap());
    }

    #[test]
    fn tables_satisfy_weighted_homogeneity_systems() {
        let two = sfix("121two");
        let t2 = table_121two();
        assert!(is_axis_solution(&two, "b", true, &t2.b_exp, &z(0)));
        assert!(is_axis_solution(&two, "c", true, &t2.c_exp, &z(0)));

        let three = sfix("121three");
        assert!(is_axis_solution(&three, "b", true, &t2.b_exp, &z(0)));
        assert!(is_axis_solution(&three, "c", true, &t2.c_exp, &z(0)));

        let one = sfix("123one");
        let t1 = table_123one();
        assert!(is_axis_solution(&one, "b", true, &t1.b_exp, &z(0)));
        assert!(is_axis_solution(&one, "c", true, &t1.c_exp, &q(1, 2)));
    }

    #[test]
    fn solver_particular_solutions_normalize_each_fixture() {
        for name in ["121two", "121three", "123one"] {
            let chart = sfix(name);
            let set = solve_scaling_weights(&chart, &["b", "c"]).unwrap();
            let scaling = set.particular_scaling(chart.ring().n_coords());
            assert!(
                scaling_normalizes(&chart, &scaling, 1).unwrap(),
                "{name}: positive branch"
            );
            assert!(
                scaling_normalizes(&chart, &scaling, -1).unwrap(),
                "{name}: negative branch"
            );
        }
    }

    #[test]
    fn identity_solves_the_untargeted_system() {
        let chart = sfix("121two");
        let n = chart.ring().n_coords();
        let zeros = vec![Scalar::zero(); n];
        assert!(is_axis_solution(&chart, "b", false, &zeros, &z(0)));
        assert!(is_axis_solution(&chart, "c", false, &zeros, &z(0)));
    }

    #[test]
    fn normalizing_solutions_compose_with_untargeted_ones() {
        let chart = sfix("121two");
        let n = chart.ring().n_coords();
        let table = table_121two();
        let free = solve_scaling_weights(&chart, &[]).unwrap();
        let axis = free.axis("b").unwrap();
        for k in &axis.kernel {
            let summed: Vec<Scalar> = table
                .b_exp
                .iter()
                .zip(&k[..n])
                .map(|(a, b)| a.clone() + b)
                .collect();
            assert!(is_axis_solution(&chart, "b", true, &summed, &k[n]));
        }
    }

    #[test]
    fn numeric_cross_check_b2_c9_s3() {
        for (sgn, c_val) in [(1i64, 9i64), (-1, -9)] {
            let chart = sfix("123one");
            let ring = chart.ring();
            let n = ring.n_coords();
            let table = table_123one();
            let b_var = ring.var("b").unwrap();
            let c_var = ring.var("c").unwrap();

            let numeric = |value: i64, var: usize| {
                move |p: &Polynomial| p.substitute(var, &Polynomial::constant(&p.ring(), z(value)))
            };
            let sub_b2 = numeric(2, b_var);
            let sub_c = numeric(c_val, c_var);

            let mut scale = Vec::with_capacity(n);
            for i in 0..n {
                let pb: i64 = table.b_exp[i].numer().try_into().unwrap();
                let ps: i64 = (table.c_exp[i].clone() * z(2)).numer().try_into().unwrap();
                let mut f = Scalar::one();
                let two = z(2);
                let three = z(3);
                for _ in 0..pb.abs() {
                    f = if pb > 0 { f * &two } else { f / &two };
                }
                for _ in 0..ps.abs() {
                    f = if ps > 0 { f * &three } else { f / &three };
                }
                scale.push(RationalFunction::constant(ring, f));
            }
            let map = DiagonalAffineMap::new(ring, scale, vec![Scalar::zero(); n]).unwrap();

            let d = chart.distribution().unwrap();
            let mut pushed = Vec::new();
            for g in d.generators() {
                let comps: Vec<Polynomial> = g
                    .coeffs()
                    .iter()
                    .map(|c| sub_c(&sub_b2(&c.as_polynomial().unwrap())))
                    .collect();
                pushed.push(pushforward(&map, &VectorField::from_polys(ring, comps)).unwrap());
            }
            let pushed = Distribution::new(pushed).unwrap();
            let target = target_distribution(&chart, sgn).unwrap();
            assert!(distribution_equal(&pushed, &target), "sign {sgn}");
        }
    }

    #[test]
    fn boundary_b_zero_normalizes_c() {
        let chart = sfix("123one");
        let (boundary, scaling) = normalize_boundary_cases(&chart, Boundary::BZero).unwrap();
        assert!(boundary.parameters().iter().all(|p| p != "b"));
        for sgn in [1, -1] {
            assert!(scaling_normalizes(&boundary, &scaling, sgn).unwrap());
        }
    }

    #[test]
    fn boundary_c_zero_normalizes_b() {
        let chart = sfix("121two");
        let (boundary, scaling) = normalize_boundary_cases(&chart, Boundary::CZero).unwrap();
        assert!(boundary.parameters().iter().all(|p| p != "c"));
        assert!(scaling_normalizes(&boundary, &scaling, 1).unwrap());
    }

    #[test]
    fn boundary_both_zero_is_identity() {
        let base = sfix("123one");
        let mut steps = base.steps().to_vec();
        let last = steps.last_mut().unwrap();
        last.const_x = Some(ConstVal::num(0));
        let chart = Chart::build(base.code(), steps, &[sqrt_symbol()]).unwrap();
        let (_, scaling) = normalize_boundary_cases(&chart, Boundary::CZero).unwrap();
        assert!(scaling.is_identity());
    }

    #[test]
    fn scaling_preserves_derived_flag_profile() {
        let chart = sfix("121two");
        let pushed = apply_scaling(&chart, &table_121two(), 1).unwrap();
        let report = derived_flag(&pushed, 5).unwrap();
        assert_eq!(report.generic_ranks(), vec![3, 5, 7, 9, 11, 13]);
    }

    #[test]
    fn fractional_exponent_without_sqrt_symbol_is_rejected() {
        let chart = fixture("123one", &[]).unwrap();
        let err = apply_scaling(&chart, &table_123one(), 1).unwrap_err();
        assert!(matches!(err, Error::InconsistentScaling(_)));
    }
}
