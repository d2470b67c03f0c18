//! Infinitesimal symmetries: prolong base vector fields up a chart tower,
//! evaluate the result at the origin as linear forms in jet symbols, and
//! scan classes for moduli candidates.
//!
//! A base field A dt + B dx0 + C dy0 with undetermined Taylor coefficients
//! admits a unique prolongation to each stage: the new pair of fiber
//! components is the unique solution of the bracket-closure condition
//! [V, W] = mu * W modulo the newest fiber directions.  Every quantity
//! stays linear in the jet symbols.

use num_traits::One;
use rayon::prelude::*;

use crate::algebra::matrix::{kernel_of_poly_rows, poly_row_rank};
use crate::algebra::{Polynomial, RingRef, Scalar, VarClass};
use crate::charts::{xi, yi, Chart, ChartStep, ConstVal, T};
use crate::error::{Error, Result};
use crate::flagcomb::{enumerate_codes, ClassCode};

/// Jet symbol variables (name, class) for base components A, B, C up to
/// the given truncation order, in canonical order: function, then total
/// degree, then derivatives in t before x0 before y0.
pub fn jet_symbol_names(order: usize) -> Vec<(String, VarClass)> {
    let mut out = Vec::new();
    for f in ["A", "B", "C"] {
        for d in 0..=order {
            for i in (0..=d).rev() {
                for j in (0..=(d - i)).rev() {
                    let k = d - i - j;
                    let mut name = f.to_string();
                    if d > 0 {
                        name.push('_');
                        for _ in 0..i {
                            name.push('t');
                        }
                        for _ in 0..j {
                            name.push_str("x0");
                        }
                        for _ in 0..k {
                            name.push_str("y0");
                        }
                    }
                    out.push((name, VarClass::Jet));
                }
            }
        }
    }
    out
}

/// A base vector field A dt + B dx0 + C dy0 on the chart's base plane.
#[derive(Clone, Debug)]
pub struct BaseField {
    ring: RingRef,
    a: Polynomial,
    b: Polynomial,
    c: Polynomial,
    /// Jet truncation order; `usize::MAX` marks an explicit polynomial
    /// field with no truncation.
    order: usize,
}

impl BaseField {
    /// The generic field whose components are full Taylor expansions in
    /// (t, x0, y0) with jet-symbol coefficients up to `order`.  The ring
    /// must already contain the symbols of `jet_symbol_names(order)`.
    pub fn generic(ring: &RingRef, order: usize) -> Result<BaseField> {
        assert!(order >= 1, "truncation order must be at least 1");
        let t = Polynomial::var_named(ring, "t")?;
        let x0 = Polynomial::var_named(ring, "x0")?;
        let y0 = Polynomial::var_named(ring, "y0")?;
        let mut comps = Vec::with_capacity(3);
        for f in ["A", "B", "C"] {
            let mut acc = Polynomial::zero(ring);
            for d in 0..=order {
                for i in (0..=d).rev() {
                    for j in (0..=(d - i)).rev() {
                        let k = d - i - j;
                        let mut name = f.to_string();
                        if d > 0 {
                            name.push('_');
                            for _ in 0..i {
                                name.push('t');
                            }
                            for _ in 0..j {
                                name.push_str("x0");
                            }
                            for _ in 0..k {
                                name.push_str("y0");
                            }
                        }
                        let sym = Polynomial::var_named(ring, &name)?;
                        let fact = factorial(i) * factorial(j) * factorial(k);
                        let mono = t.pow(i as u32).mul(&x0.pow(j as u32)).mul(&y0.pow(k as u32));
                        acc = acc.add(&sym.mul(&mono).mul_scalar(&Scalar::new(
                            num_bigint::BigInt::from(1),
                            fact.into(),
                        )));
                    }
                }
            }
            comps.push(acc);
        }
        let c = comps.pop().unwrap();
        let b = comps.pop().unwrap();
        let a = comps.pop().unwrap();
        Ok(BaseField {
            ring: ring.clone(),
            a,
            b,
            c,
            order,
        })
    }

    /// An explicit polynomial base field (no jet truncation).
    pub fn explicit(ring: &RingRef, a: Polynomial, b: Polynomial, c: Polynomial) -> BaseField {
        BaseField {
            ring: ring.clone(),
            a,
            b,
            c,
            order: usize::MAX,
        }
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn components(&self) -> (&Polynomial, &Polynomial, &Polynomial) {
        (&self.a, &self.b, &self.c)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Pointwise linear combination alpha * self + beta * other.
    pub fn combine(&self, alpha: &Scalar, other: &BaseField, beta: &Scalar) -> BaseField {
        BaseField {
            ring: self.ring.clone(),
            a: self.a.mul_scalar(alpha).add(&other.a.mul_scalar(beta)),
            b: self.b.mul_scalar(alpha).add(&other.b.mul_scalar(beta)),
            c: self.c.mul_scalar(alpha).add(&other.c.mul_scalar(beta)),
            order: self.order.min(other.order),
        }
    }
}

fn factorial(n: usize) -> u64 {
    (1..=n as u64).product::<u64>().max(1)
}

/// A prolonged symmetry: one polynomial component per chart coordinate,
/// linear in the jet symbols.
#[derive(Clone, Debug)]
pub struct SymmetryVector {
    chart: Chart,
    components: Vec<Polynomial>,
}

impl SymmetryVector {
    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn ring(&self) -> &RingRef {
        self.chart.ring()
    }

    pub fn components(&self) -> &[Polynomial] {
        &self.components
    }

    pub fn component(&self, i: usize) -> &Polynomial {
        &self.components[i]
    }
}

/// Prolongation controls.
#[derive(Clone, Copy, Debug)]
pub struct ProlongOptions {
    /// Truncate stage-k components to coordinate degree r - k.  Sound for
    /// origin evaluation: each later stage consumes at most one
    /// coordinate derivative of earlier components.
    pub degree_cutoff: bool,
    /// Verify the overdetermined part of each stage's bracket condition.
    pub check_consistency: bool,
}

impl Default for ProlongOptions {
    fn default() -> Self {
        ProlongOptions {
            degree_cutoff: false,
            check_consistency: true,
        }
    }
}

fn poly_coeffs(w: &crate::geometry::VectorField) -> Vec<Polynomial> {
    w.coeffs()
        .iter()
        .map(|c| c.as_polynomial().expect("chart generators are polynomial"))
        .collect()
}

/// Bracket of component vectors over the chart coordinates, truncated to
/// `max_degree` when given.
fn poly_bracket(
    ring: &RingRef,
    v: &[Polynomial],
    w: &[Polynomial],
    max_degree: Option<u32>,
) -> Vec<Polynomial> {
    let n = ring.n_coords();
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let mut acc = Polynomial::zero(ring);
        for j in 0..n {
            if !v[j].is_zero() {
                let d = w[i].diff(j);
                if !d.is_zero() {
                    acc = acc.add(&v[j].mul(&d));
                }
            }
            if !w[j].is_zero() {
                let d = v[i].diff(j);
                if !d.is_zero() {
                    acc = acc.sub(&w[j].mul(&d));
                }
            }
        }
        if let Some(m) = max_degree {
            acc = acc.truncate_coord_degree(m);
        }
        out.push(acc);
    }
    out
}

/// Prolong `base` up the chart with default options (exact, verified).
pub fn prolong_symmetry(base: &BaseField, chart: &Chart) -> Result<SymmetryVector> {
    prolong_symmetry_with(base, chart, ProlongOptions::default())
}

/// Prolong `base` up the chart stage by stage.
pub fn prolong_symmetry_with(
    base: &BaseField,
    chart: &Chart,
    opts: ProlongOptions,
) -> Result<SymmetryVector> {
    let ring = chart.ring();
    if !crate::algebra::ring::same_ring(ring, base.ring()) {
        return Err(Error::RingMismatch);
    }
    let r = chart.length();
    if base.order != usize::MAX && base.order < r + 1 {
        return Err(Error::TruncationTooSmall {
            supplied: base.order,
            needed: r + 1,
            stage: r,
        });
    }
    let n = ring.n_coords();
    let mut comp: Vec<Polynomial> = vec![Polynomial::zero(ring); n];
    comp[T] = base.a.clone();
    comp[xi(0)] = base.b.clone();
    comp[yi(0)] = base.c.clone();
    if opts.degree_cutoff {
        let budget = r as u32;
        for c in comp.iter_mut() {
            *c = c.truncate_coord_degree(budget);
        }
    }
    let mut pivot = T;
    for s in 1..=r {
        let w = poly_coeffs(chart.stage_generator(s));
        let letter = if s == 1 { 1 } else { chart.code().letters()[s - 1] };
        let budget = if opts.degree_cutoff {
            Some((r - s) as u32)
        } else {
            None
        };
        let a_vec = poly_bracket(ring, &comp, &w, budget);
        let (slot_mu, slot_p, slot_q, next_pivot) = match letter {
            1 => (pivot, xi(s - 1), yi(s - 1), pivot),
            2 => (xi(s - 1), pivot, yi(s - 1), xi(s - 1)),
            3 => (yi(s - 1), pivot, xi(s - 1), yi(s - 1)),
            l => return Err(Error::Internal(format!("letter {l} out of range"))),
        };
        debug_assert!(w[slot_mu].is_constant() && w[slot_mu].constant_term().is_one());
        let mu = a_vec[slot_mu].clone();
        let solve = |slot: usize| -> Polynomial {
            let p = mu.mul(&w[slot]).sub(&a_vec[slot]);
            match budget {
                Some(m) => p.truncate_coord_degree(m),
                None => p,
            }
        };
        let p = solve(slot_p);
        let q = solve(slot_q);
        if opts.check_consistency {
            // residual of the bracket condition on the remaining slots:
            // A + P dW/dx_s + Q dW/dy_s - mu W must vanish off the fiber
            for j in 0..2 * s + 1 {
                let resid = a_vec[j]
                    .add(&p.mul(&w[j].diff(xi(s))))
                    .add(&q.mul(&w[j].diff(yi(s))))
                    .sub(&mu.mul(&w[j]));
                let resid = match budget {
                    Some(m) => resid.truncate_coord_degree(m),
                    None => resid,
                };
                if !resid.is_zero() {
                    return Err(Error::Internal(format!(
                        "bracket-closure residual nonzero at stage {s} slot {j}"
                    )));
                }
            }
        }
        comp[xi(s)] = p;
        comp[yi(s)] = q;
        pivot = next_pivot;
    }
    Ok(SymmetryVector {
        chart: chart.clone(),
        components: comp,
    })
}

/// Substitute every chart coordinate by 0; parameters and jet symbols
/// survive.  Returns one linear form per coordinate slot.
pub fn evaluate_at_origin(v: &SymmetryVector) -> Vec<Polynomial> {
    v.components.iter().map(|c| c.at_coord_origin()).collect()
}

/// Scan verdict for one (code, assignment) pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    CandidateModulus,
    Movable,
}

/// Outcome of one moduli-scan job.
#[derive(Clone, Debug)]
pub struct ModuliReport {
    pub code: ClassCode,
    /// Canonical rendering of the constant assignment.
    pub constants: String,
    /// Dimension of the reachable span in the two newest directions under
    /// the vanishing constraints.
    pub span_dim: usize,
    /// Symbolic final-step slots not covered by the reachable span.
    pub deficient_slots: Vec<String>,
    pub verdict: Verdict,
}

fn grid_vals(grid: &[Scalar]) -> Vec<ConstVal> {
    grid.iter().map(|v| ConstVal::Num(v.clone())).collect()
}

fn render_const(c: &ConstVal) -> String {
    match c {
        ConstVal::Num(n) => crate::algebra::format_scalar(n),
        ConstVal::Sym(s) => s.clone(),
    }
}

fn render_steps(steps: &[ChartStep]) -> String {
    let mut parts = Vec::new();
    for (k, s) in steps.iter().enumerate() {
        let mut slots = Vec::new();
        if let Some(c) = &s.const_x {
            slots.push(format!("x:{}", render_const(c)));
        }
        if let Some(c) = &s.const_y {
            slots.push(format!("y:{}", render_const(c)));
        }
        if !slots.is_empty() {
            parts.push(format!("step{}={}", k + 1, slots.join(",")));
        }
    }
    parts.join(";")
}

/// All constant assignments for `code` over `grid`, with final-step slots
/// ranging over grid values and the symbolic markers b (x slot) and
/// c (y slot); only assignments with at least one symbolic slot are kept.
fn assignments(code: &ClassCode, grid: &[Scalar]) -> Vec<Vec<ChartStep>> {
    let r = code.length();
    let vals = grid_vals(grid);
    let zero = ConstVal::num(0);
    // per-step choices for steps 2..r-1
    let mut partials: Vec<Vec<ChartStep>> = vec![vec![ChartStep::letter1(zero.clone(), zero)]];
    for (k, &letter) in code.letters().iter().enumerate().skip(1) {
        let last = k == r - 1;
        let mut choices: Vec<ChartStep> = Vec::new();
        let xs: Vec<ConstVal> = if last {
            let mut v = vals.clone();
            v.push(ConstVal::sym("b"));
            v
        } else {
            vals.clone()
        };
        let ys: Vec<ConstVal> = if last {
            let mut v = vals.clone();
            v.push(ConstVal::sym("c"));
            v
        } else {
            vals.clone()
        };
        match letter {
            1 => {
                for cx in &xs {
                    for cy in &ys {
                        choices.push(ChartStep::letter1(cx.clone(), cy.clone()));
                    }
                }
            }
            2 => {
                for cy in &ys {
                    choices.push(ChartStep::letter2(cy.clone()));
                }
            }
            _ => choices.push(ChartStep::letter3()),
        }
        let mut next = Vec::new();
        for p in &partials {
            for c in &choices {
                let mut p2 = p.clone();
                p2.push(c.clone());
                next.push(p2);
            }
        }
        partials = next;
    }
    partials
        .into_iter()
        .filter(|steps| {
            let last = steps.last().unwrap();
            matches!(last.const_x, Some(ConstVal::Sym(_)))
                || matches!(last.const_y, Some(ConstVal::Sym(_)))
        })
        .collect()
}

/// Run one scan job: build the chart with generic jets, prolong, impose
/// vanishing of every component except the two newest, and measure the
/// reachable span there.
pub fn scan_assignment(code: &ClassCode, steps: &[ChartStep]) -> Result<ModuliReport> {
    let r = code.length();
    let order = r + 1;
    let jets = jet_symbol_names(order);
    let chart = Chart::build(code, steps.to_vec(), &jets)?;
    let ring = chart.ring();
    let base = BaseField::generic(ring, order)?;
    let v = prolong_symmetry_with(
        &base,
        &chart,
        ProlongOptions {
            degree_cutoff: true,
            check_consistency: false,
        },
    )?;
    let origin = evaluate_at_origin(&v);

    // jet symbols actually present in the origin values
    let mut jet_vars: Vec<usize> = Vec::new();
    for p in &origin {
        for var in p.support() {
            if ring.class(var) == VarClass::Jet && !jet_vars.contains(&var) {
                jet_vars.push(var);
            }
        }
    }
    jet_vars.sort_unstable();

    // vanishing constraints: all slots except the two newest
    let mut rows: Vec<Vec<Polynomial>> = Vec::new();
    for (slot, p) in origin.iter().enumerate() {
        if slot == xi(r) || slot == yi(r) {
            continue;
        }
        if p.is_zero() {
            continue;
        }
        rows.push(jet_vars.iter().map(|&j| p.diff(j)).collect());
    }
    let kernel = if rows.is_empty() {
        (0..jet_vars.len())
            .map(|i| {
                let mut v = vec![Polynomial::zero(ring); jet_vars.len()];
                v[i] = Polynomial::one(ring);
                v
            })
            .collect()
    } else {
        kernel_of_poly_rows(ring, rows, jet_vars.len())
    };

    // reachable directions in the two newest slots
    let coeff_row = |slot: usize| -> Vec<Polynomial> {
        jet_vars.iter().map(|&j| origin[slot].diff(j)).collect()
    };
    let row_x = coeff_row(xi(r));
    let row_y = coeff_row(yi(r));
    let mut span_rows: Vec<Vec<Polynomial>> = Vec::new();
    for k in &kernel {
        let dot = |row: &[Polynomial]| -> Polynomial {
            let mut acc = Polynomial::zero(ring);
            for (c, kv) in row.iter().zip(k) {
                if !c.is_zero() && !kv.is_zero() {
                    acc = acc.add(&c.mul(kv));
                }
            }
            acc
        };
        let vx = dot(&row_x);
        let vy = dot(&row_y);
        if !vx.is_zero() || !vy.is_zero() {
            span_rows.push(vec![vx, vy]);
        }
    }
    let span_dim = poly_row_rank(&span_rows);

    let last = steps.last().unwrap();
    let mut deficient = Vec::new();
    let mut check_dir = |sym: bool, idx: usize, name: &str| {
        if !sym {
            return;
        }
        let mut unit = vec![Polynomial::zero(ring); 2];
        unit[idx] = Polynomial::one(ring);
        let mut all = span_rows.clone();
        all.push(unit);
        if poly_row_rank(&all) > span_dim {
            deficient.push(name.to_string());
        }
    };
    check_dir(
        matches!(last.const_x, Some(ConstVal::Sym(_))),
        0,
        "x",
    );
    check_dir(
        matches!(last.const_y, Some(ConstVal::Sym(_))),
        1,
        "y",
    );
    let verdict = if deficient.is_empty() {
        Verdict::Movable
    } else {
        Verdict::CandidateModulus
    };
    Ok(ModuliReport {
        code: code.clone(),
        constants: render_steps(steps),
        span_dim,
        deficient_slots: deficient,
        verdict,
    })
}

/// Scan every class of the given length over the constant grid; final-step
/// slots additionally range over symbolic parameters.  Reports come back
/// in canonical (code, assignment) order regardless of scheduling.
pub fn moduli_scan(length: usize, grid: &[Scalar]) -> Result<Vec<ModuliReport>> {
    assert!(length >= 2 && length <= 5, "scan supports lengths 2..=5");
    let mut jobs: Vec<(ClassCode, Vec<ChartStep>)> = Vec::new();
    for code in enumerate_codes(2, length) {
        for steps in assignments(&code, grid) {
            jobs.push((code.clone(), steps));
        }
    }
    let results: Result<Vec<ModuliReport>> = jobs
        .par_iter()
        .map(|(code, steps)| scan_assignment(code, steps))
        .collect();
    results
}

/// Codes with at least one candidate-modulus assignment, deduplicated, in
/// lexicographic order.
pub fn candidate_classes(reports: &[ModuliReport]) -> Vec<ClassCode> {
    let mut out: Vec<ClassCode> = Vec::new();
    for r in reports {
        if r.verdict == Verdict::CandidateModulus && !out.contains(&r.code) {
            out.push(r.code.clone());
        }
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charts::{build_chart, fixture, zero_steps};
    use crate::flagcomb::validate_code;

    fn v(ring: &RingRef, n: &str) -> Polynomial {
        Polynomial::var_named(ring, n).unwrap()
    }

    #[test]
    fn jet_symbol_counts() {
        // 3 * C(order + 3, 3) symbols
        assert_eq!(jet_symbol_names(1).len(), 3 * 4);
        assert_eq!(jet_symbol_names(2).len(), 3 * 10);
        assert_eq!(jet_symbol_names(6).len(), 3 * 84);
        let names = jet_symbol_names(1);
        let flat: Vec<&str> = names.iter().map(|(n, _)| n.as_str()).collect();
        assert_eq!(
            &flat[..4],
            &["A", "A_t", "A_x0", "A_y0"]
        );
        assert!(flat.contains(&"B_x0"));
        assert!(flat.contains(&"C_y0"));
    }

    #[test]
    fn translation_prolongs_to_itself() {
        let code = validate_code("1.1.1", 2).unwrap();
        let chart = build_chart(&code, zero_steps(&code)).unwrap();
        let ring = chart.ring();
        let base = BaseField::explicit(
            ring,
            Polynomial::one(ring),
            Polynomial::zero(ring),
            Polynomial::zero(ring),
        );
        let sym = prolong_symmetry(&base, &chart).unwrap();
        for (i, c) in sym.components().iter().enumerate() {
            if i == T {
                assert!(c.is_constant() && c.constant_term().is_one());
            } else {
                assert!(c.is_zero(), "slot {i}");
            }
        }
    }

    #[test]
    fn dilation_weights_on_contact_chart() {
        let code = validate_code("1.1", 2).unwrap();
        let chart = build_chart(&code, zero_steps(&code)).unwrap();
        let ring = chart.ring();
        let base = BaseField::explicit(
            ring,
            v(ring, "t"),
            Polynomial::zero(ring),
            Polynomial::zero(ring),
        );
        let sym = prolong_symmetry(&base, &chart).unwrap();
        assert_eq!(sym.component(T), &v(ring, "t"));
        assert!(sym.component(xi(0)).is_zero());
        assert!(sym.component(yi(0)).is_zero());
        assert_eq!(sym.component(xi(1)), &v(ring, "x1").neg());
        assert_eq!(sym.component(yi(1)), &v(ring, "y1").neg());
        assert_eq!(
            sym.component(xi(2)),
            &v(ring, "x2").mul_scalar(&crate::algebra::scalar::int(-2))
        );
        assert_eq!(
            sym.component(yi(2)),
            &v(ring, "y2").mul_scalar(&crate::algebra::scalar::int(-2))
        );
    }

    fn ivec_origin() -> (crate::charts::Chart, Vec<Polynomial>) {
        let jets = jet_symbol_names(6);
        let chart = fixture("121two", &jets).unwrap();
        let ring = chart.ring().clone();
        let base = BaseField::generic(&ring, 6).unwrap();
        let sym = prolong_symmetry_with(
            &base,
            &chart,
            ProlongOptions {
                degree_cutoff: true,
                check_consistency: true,
            },
        )
        .unwrap();
        let o = evaluate_at_origin(&sym);
        (chart, o)
    }

    fn ivec_expected(ring: &RingRef) -> Vec<(usize, Polynomial)> {
        let lin = |terms: &[(&str, i64)]| -> Polynomial {
            let mut acc = Polynomial::zero(ring);
            for (n, c) in terms {
                acc = acc.add(&v(ring, n).mul_scalar(&crate::algebra::scalar::int(*c)));
            }
            acc
        };
        vec![
            (T, lin(&[("A", 1)])),
            (xi(0), lin(&[("B", 1)])),
            (yi(0), lin(&[("C", 1)])),
            (xi(1), lin(&[("B_t", 1)])),
            (yi(1), lin(&[("C_t", 1)])),
            (xi(2), Polynomial::zero(ring)),
            (yi(2), lin(&[("C_x0", 1)])),
            (xi(3), Polynomial::zero(ring)),
            (yi(3), lin(&[("A_t", 1), ("B_x0", -2), ("C_y0", 1)])),
            (xi(4), Polynomial::zero(ring)),
            (yi(4), Polynomial::zero(ring)),
            (
                xi(5),
                v(ring, "b").mul(&lin(&[("A_t", -3), ("B_x0", 5), ("C_y0", -2)])),
            ),
            (
                yi(5),
                v(ring, "c").mul(&lin(&[("A_t", 1), ("B_x0", 2), ("C_y0", -2)])),
            ),
        ]
    }

    #[test]
    fn origin_values_match_reference_vector() {
        let (chart, o) = ivec_origin();
        let ring = chart.ring();
        for (slot, want) in ivec_expected(ring) {
            assert_eq!(o[slot], want, "slot {slot} ({})", ring.name(slot));
        }
    }

    #[test]
    fn constrained_residual_matches_reference() {
        let (chart, o) = ivec_origin();
        let ring = chart.ring();
        // vanishing of the eleven non-final components forces
        // B_t = C_t = C_x0 = 0 and A_t = 2 B_x0 - C_y0
        let at = ring.var("A_t").unwrap();
        let sub = v(ring, "B_x0")
            .mul_scalar(&crate::algebra::scalar::int(2))
            .sub(&v(ring, "C_y0"));
        let reduce = |p: &Polynomial| p.substitute(at, &sub);
        let rx = reduce(&o[xi(5)]);
        let ry = reduce(&o[yi(5)]);
        let want_x = v(ring, "b").mul(
            &v(ring, "B_x0").neg().add(&v(ring, "C_y0")),
        );
        let want_y = v(ring, "c").mul(
            &v(ring, "B_x0")
                .mul_scalar(&crate::algebra::scalar::int(4))
                .sub(&v(ring, "C_y0").mul_scalar(&crate::algebra::scalar::int(3))),
        );
        assert_eq!(rx, want_x);
        assert_eq!(ry, want_y);
    }

    #[test]
    fn zero_base_field_prolongs_to_zero() {
        let jets = jet_symbol_names(6);
        let chart = fixture("212", &jets).unwrap();
        let ring = chart.ring();
        let base = BaseField::explicit(
            ring,
            Polynomial::zero(ring),
            Polynomial::zero(ring),
            Polynomial::zero(ring),
        );
        let sym = prolong_symmetry(&base, &chart).unwrap();
        assert!(sym.components().iter().all(|c| c.is_zero()));
    }

    #[test]
    fn truncation_too_small_rejected() {
        let jets = jet_symbol_names(3);
        let chart = fixture("zzz", &jets).unwrap();
        let base = BaseField::generic(chart.ring(), 3).unwrap();
        assert!(matches!(
            prolong_symmetry(&base, &chart),
            Err(Error::TruncationTooSmall {
                supplied: 3,
                needed: 6,
                ..
            })
        ));
    }
}
