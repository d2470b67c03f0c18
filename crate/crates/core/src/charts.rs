//! Polynomial coordinate models of singularity classes: from a class code
//! and per-step constants, build the chart's coordinates, stagewise main
//! generators, the rank-3 distribution, and the dual Pfaffian system.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::algebra::{Polynomial, Ring, RingRef, Scalar, VarClass};
use crate::error::{Error, Result};
use crate::flagcomb::ClassCode;
use crate::geometry::{Distribution, VectorField};

/// An additive constant in a prolongation step: a number or a named
/// symbolic parameter.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConstVal {
    Num(Scalar),
    Sym(String),
}

impl ConstVal {
    pub fn num(n: i64) -> ConstVal {
        ConstVal::Num(Scalar::from_integer(n.into()))
    }

    pub fn sym(name: &str) -> ConstVal {
        ConstVal::Sym(name.to_string())
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, ConstVal::Num(n) if n.is_zero())
    }

    fn display(&self) -> String {
        match self {
            ConstVal::Num(n) => crate::algebra::format_scalar(n),
            ConstVal::Sym(s) => s.clone(),
        }
    }
}

/// One prolongation step: the pattern letter plus whatever additive
/// constants that letter admits.  Letter 1 carries (const_x, const_y),
/// letter 2 only const_y, letter 3 none; the first step carries none.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChartStep {
    pub letter: u8,
    pub const_x: Option<ConstVal>,
    pub const_y: Option<ConstVal>,
}

impl ChartStep {
    pub fn letter1(const_x: ConstVal, const_y: ConstVal) -> ChartStep {
        ChartStep {
            letter: 1,
            const_x: Some(const_x),
            const_y: Some(const_y),
        }
    }

    pub fn letter2(const_y: ConstVal) -> ChartStep {
        ChartStep {
            letter: 2,
            const_x: None,
            const_y: Some(const_y),
        }
    }

    pub fn letter3() -> ChartStep {
        ChartStep {
            letter: 3,
            const_x: None,
            const_y: None,
        }
    }

    fn validate(&self, step: usize, first: bool) -> Result<()> {
        let forbid = |slot: &'static str| Error::ConstantNotAllowed {
            step,
            letter: self.letter,
            slot,
        };
        if first {
            if self.const_x.as_ref().is_some_and(|c| !c.is_zero()) {
                return Err(forbid("x"));
            }
            if self.const_y.as_ref().is_some_and(|c| !c.is_zero()) {
                return Err(forbid("y"));
            }
            return Ok(());
        }
        match self.letter {
            1 => Ok(()),
            2 => {
                if self.const_x.as_ref().is_some_and(|c| !c.is_zero()) {
                    Err(forbid("x"))
                } else {
                    Ok(())
                }
            }
            3 => {
                if self.const_x.as_ref().is_some_and(|c| !c.is_zero()) {
                    Err(forbid("x"))
                } else if self.const_y.as_ref().is_some_and(|c| !c.is_zero()) {
                    Err(forbid("y"))
                } else {
                    Ok(())
                }
            }
            l => Err(Error::Internal(format!("letter {l} out of range"))),
        }
    }
}

/// A chart for a width-2 class: coordinates (t, x0, y0, ..., xr, yr), the
/// stagewise main generators, and the two fiber generators.
#[derive(Clone, Debug)]
pub struct Chart {
    code: ClassCode,
    steps: Vec<ChartStep>,
    ring: RingRef,
    stage_generators: Vec<VectorField>,
}

/// Coordinate index of t.
pub const T: usize = 0;

/// Coordinate index of x_k.
pub fn xi(k: usize) -> usize {
    2 * k + 1
}

/// Coordinate index of y_k.
pub fn yi(k: usize) -> usize {
    2 * k + 2
}

/// Coordinate names (t, x0, y0, ..., xr, yr).
pub fn coordinate_names(r: usize) -> Vec<String> {
    let mut names = vec!["t".to_string()];
    for k in 0..=r {
        names.push(format!("x{k}"));
        names.push(format!("y{k}"));
    }
    names
}

impl Chart {
    /// Build the chart for `code` with the given per-step constants
    /// (index k holds step k+1).  Extra non-coordinate ring variables,
    /// such as jet symbols, may be adjoined.
    pub fn build(
        code: &ClassCode,
        steps: Vec<ChartStep>,
        extra_vars: &[(String, VarClass)],
    ) -> Result<Chart> {
        if code.width() != 2 {
            return Err(Error::UnsupportedWidth(code.width()));
        }
        let r = code.length();
        assert_eq!(steps.len(), r, "one step per code letter");
        for (k, (step, &letter)) in steps.iter().zip(code.letters()).enumerate() {
            if step.letter != letter {
                return Err(Error::InvalidCode {
                    word: code.to_string(),
                    reason: format!(
                        "step {} letter {} disagrees with code letter {}",
                        k + 1,
                        step.letter,
                        letter
                    ),
                });
            }
            step.validate(k + 1, k == 0)?;
        }

        // ring: coordinates, then symbolic constants in first-use order,
        // then caller extras
        let mut vars: Vec<(String, VarClass)> = coordinate_names(r)
            .into_iter()
            .map(|n| (n, VarClass::Coordinate))
            .collect();
        let mut seen: Vec<String> = Vec::new();
        for s in &steps {
            for c in [&s.const_x, &s.const_y].into_iter().flatten() {
                if let ConstVal::Sym(name) = c {
                    if !seen.contains(name) {
                        seen.push(name.clone());
                    }
                }
            }
        }
        for name in &seen {
            vars.push((name.clone(), VarClass::Parameter));
        }
        for (name, class) in extra_vars {
            if !vars.iter().any(|(n, _)| n == name) {
                vars.push((name.clone(), *class));
            }
        }
        let ring = Ring::new(vars);

        let const_poly = |c: &Option<ConstVal>| -> Result<Polynomial> {
            match c {
                None => Ok(Polynomial::zero(&ring)),
                Some(ConstVal::Num(n)) => Ok(Polynomial::constant(&ring, n.clone())),
                Some(ConstVal::Sym(s)) => Polynomial::var_named(&ring, s),
            }
        };

        let var = |i: usize| Polynomial::var(&ring, i);
        let mut stage_generators: Vec<VectorField> = Vec::with_capacity(r);
        // W1 = dt + x1 dx0 + y1 dy0
        let mut w: Vec<Polynomial> = vec![Polynomial::zero(&ring); ring.n_coords()];
        w[T] = Polynomial::one(&ring);
        w[xi(0)] = var(xi(1));
        w[yi(0)] = var(yi(1));
        stage_generators.push(VectorField::from_polys(&ring, w.clone()));

        for (k, step) in steps.iter().enumerate().skip(1) {
            // step k+1 in 1-based terms: newest pair before it is (x_k, y_k)
            let cx = const_poly(&step.const_x)?;
            let cy = const_poly(&step.const_y)?;
            let mut next: Vec<Polynomial>;
            match step.letter {
                1 => {
                    next = w.clone();
                    next[xi(k)] = next[xi(k)].add(&cx.add(&var(xi(k + 1))));
                    next[yi(k)] = next[yi(k)].add(&cy.add(&var(yi(k + 1))));
                }
                2 => {
                    next = w.iter().map(|p| p.mul(&var(xi(k + 1)))).collect();
                    next[xi(k)] = next[xi(k)].add(&Polynomial::one(&ring));
                    next[yi(k)] = next[yi(k)].add(&cy.add(&var(yi(k + 1))));
                }
                3 => {
                    next = w.iter().map(|p| p.mul(&var(xi(k + 1)))).collect();
                    next[xi(k)] = next[xi(k)].add(&var(yi(k + 1)));
                    next[yi(k)] = next[yi(k)].add(&Polynomial::one(&ring));
                }
                l => return Err(Error::Internal(format!("letter {l} out of range"))),
            }
            w = next;
            stage_generators.push(VectorField::from_polys(&ring, w.clone()));
        }

        Ok(Chart {
            code: code.clone(),
            steps,
            ring,
            stage_generators,
        })
    }

    pub fn code(&self) -> &ClassCode {
        &self.code
    }

    pub fn steps(&self) -> &[ChartStep] {
        &self.steps
    }

    pub fn length(&self) -> usize {
        self.code.length()
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    /// Main generator W_k of stage k (1-based).
    pub fn stage_generator(&self, k: usize) -> &VectorField {
        &self.stage_generators[k - 1]
    }

    /// Main generator W_r of the top stage.
    pub fn main_generator(&self) -> &VectorField {
        self.stage_generators.last().unwrap()
    }

    /// The two fiber generators at the top stage.
    pub fn fiber_generators(&self) -> (VectorField, VectorField) {
        let r = self.length();
        (
            VectorField::coordinate(&self.ring, xi(r)),
            VectorField::coordinate(&self.ring, yi(r)),
        )
    }

    /// The rank-3 distribution (W_r, dx_r, dy_r).
    pub fn distribution(&self) -> Result<Distribution> {
        let (fx, fy) = self.fiber_generators();
        Distribution::new(vec![self.main_generator().clone(), fx, fy])
    }

    /// Names of symbolic constants, in first-use order.
    pub fn parameters(&self) -> Vec<String> {
        let mut seen = Vec::new();
        for s in &self.steps {
            for c in [&s.const_x, &s.const_y].into_iter().flatten() {
                if let ConstVal::Sym(name) = c {
                    if !seen.contains(name) {
                        seen.push(name.clone());
                    }
                }
            }
        }
        seen
    }

    /// Byte-stable JSON rendering of the chart.
    pub fn to_json(&self) -> String {
        let mut consts = Vec::new();
        for (k, s) in self.steps.iter().enumerate() {
            let mut parts = vec![
                format!("\"step\":{}", k + 1),
                format!("\"letter\":{}", s.letter),
            ];
            if let Some(c) = &s.const_x {
                parts.push(format!("\"x\":\"{}\"", c.display()));
            }
            if let Some(c) = &s.const_y {
                parts.push(format!("\"y\":\"{}\"", c.display()));
            }
            consts.push(format!("{{{}}}", parts.join(",")));
        }
        let coords: Vec<String> = (0..self.ring.n_coords())
            .map(|i| format!("\"{}\"", self.ring.name(i)))
            .collect();
        let (fx, fy) = self.fiber_generators();
        let gens: Vec<String> = [self.main_generator(), &fx, &fy]
            .iter()
            .map(|g| {
                let cs: Vec<String> = g
                    .coeffs()
                    .iter()
                    .map(|c| format!("\"{c}\""))
                    .collect();
                format!("[{}]", cs.join(","))
            })
            .collect();
        format!(
            "{{\"schema\":\"chart/1\",\"code\":\"{}\",\"constants\":[{}],\"coordinates\":[{}],\"generators\":[{}]}}",
            self.code,
            consts.join(","),
            coords.join(","),
            gens.join(",")
        )
    }

    /// The chart of the code with its last step dropped, over its own ring.
    pub fn truncated(&self) -> Result<Chart> {
        let letters = self.code.letters()[..self.length() - 1].to_vec();
        let code = ClassCode::new(letters, self.code.width())?;
        Chart::build(&code, self.steps[..self.length() - 1].to_vec(), &[])
    }
}

/// The dual Pfaffian system of a chart: 2r independent one-forms (rows of
/// rational-function coefficients against the coordinate differentials)
/// spanning the annihilator of the distribution.
#[derive(Clone, Debug)]
pub struct PfaffSystem {
    ring: RingRef,
    forms: Vec<Vec<Polynomial>>,
}

impl PfaffSystem {
    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn forms(&self) -> &[Vec<Polynomial>] {
        &self.forms
    }

    /// Render each form as an equation string, e.g. "dx0 - x1*dt = 0".
    pub fn display_lines(&self) -> Vec<String> {
        self.forms
            .iter()
            .map(|form| {
                let mut parts = Vec::new();
                for (i, c) in form.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let d = format!("d{}", self.ring.name(i));
                    let lead = parts.is_empty();
                    let s = if c.is_constant() {
                        let v = c.constant_term();
                        let a = crate::algebra::format_scalar(&v);
                        match a.as_str() {
                            "1" => d.clone(),
                            "-1" => format!("-{d}"),
                            _ => format!("{a}*{d}"),
                        }
                    } else if c.n_terms() == 1 {
                        format!("{c}*{d}")
                    } else {
                        format!("({c})*{d}")
                    };
                    if lead {
                        parts.push(s);
                    } else if let Some(rest) = s.strip_prefix('-') {
                        parts.push(format!("- {rest}"));
                    } else {
                        parts.push(format!("+ {s}"));
                    }
                }
                format!("{} = 0", parts.join(" "))
            })
            .collect()
    }
}

/// Annihilator of the chart's distribution as a Pfaffian system.
pub fn pfaffian_system(chart: &Chart) -> Result<PfaffSystem> {
    let d = chart.distribution()?;
    let m = crate::geometry::coeff_matrix(chart.ring(), d.generators());
    let mut forms = m.rf_kernel();
    // normalize each form to unit coefficient on its last-named nonzero
    // differential when that coefficient is constant
    for form in forms.iter_mut() {
        if let Some(c) = form.iter().rev().find(|c| !c.is_zero()) {
            if c.is_constant() {
                let inv = c.constant_term().recip();
                for p in form.iter_mut() {
                    *p = p.mul_scalar(&inv);
                }
            }
        }
    }
    Ok(PfaffSystem {
        ring: chart.ring().clone(),
        forms,
    })
}

/// Build a chart from a code and explicit steps with no extra variables.
pub fn build_chart(code: &ClassCode, steps: Vec<ChartStep>) -> Result<Chart> {
    Chart::build(code, steps, &[])
}

/// Steps for a code with every admissible constant zero.
pub fn zero_steps(code: &ClassCode) -> Vec<ChartStep> {
    code.letters()
        .iter()
        .map(|&l| match l {
            1 => ChartStep::letter1(ConstVal::num(0), ConstVal::num(0)),
            2 => ChartStep::letter2(ConstVal::num(0)),
            _ => ChartStep::letter3(),
        })
        .collect()
}

fn fixture_steps(name: &str) -> Option<(&'static str, Vec<ChartStep>)> {
    let l1 = ChartStep::letter1;
    let l2 = ChartStep::letter2;
    let l3 = ChartStep::letter3;
    let n = ConstVal::num;
    let s = ConstVal::sym;
    match name {
        // Note: one circulated rendering of this germ's generator repeats
        // the term "dy3"; its dual Pfaffian display forces the second
        // occurrence to be dy2, which is what this fixture encodes.
        "zzz" => Some((
            "1.2.3.1.2",
            vec![
                l1(n(0), n(0)),
                l2(n(0)),
                l3(),
                l1(n(1), n(1)),
                l2(s("a")),
            ],
        )),
        "212" => Some((
            "1.2.2.1.2",
            vec![
                l1(n(0), n(0)),
                l2(n(0)),
                l2(n(0)),
                l1(n(1), n(1)),
                l2(s("c")),
            ],
        )),
        "121" => Some((
            "1.2.1.2.1",
            vec![
                l1(n(0), n(0)),
                l2(n(0)),
                l1(n(1), n(0)),
                l2(n(1)),
                l1(n(0), s("c")),
            ],
        )),
        "123one" => Some((
            "1.2.1.3.1",
            vec![
                l1(n(0), n(0)),
                l2(n(0)),
                l1(n(1), n(0)),
                l3(),
                l1(s("b"), s("c")),
            ],
        )),
        "121two" => Some((
            "1.2.1.3.1",
            vec![
                l1(n(0), n(0)),
                l2(n(0)),
                l1(n(0), n(1)),
                l3(),
                l1(s("b"), s("c")),
            ],
        )),
        "121three" => Some((
            "1.2.1.3.1",
            vec![
                l1(n(0), n(0)),
                l2(n(0)),
                l1(n(0), n(0)),
                l3(),
                l1(s("b"), s("c")),
            ],
        )),
        _ => None,
    }
}

/// Canonical fixture names, in registry order.
pub const FIXTURE_NAMES: [&str; 6] = ["zzz", "212", "121", "123one", "121two", "121three"];

/// Build one fixture chart by name, optionally adjoining extra ring
/// variables.
pub fn fixture(name: &str, extra_vars: &[(String, VarClass)]) -> Result<Chart> {
    let (word, steps) =
        fixture_steps(name).ok_or_else(|| Error::UnknownFixture(name.to_string()))?;
    let code = crate::flagcomb::validate_code(word, 2)?;
    Chart::build(&code, steps, extra_vars)
}

/// The six reference charts, keyed by name.
pub fn named_fixtures() -> Result<BTreeMap<String, Chart>> {
    let mut out = BTreeMap::new();
    for name in FIXTURE_NAMES {
        out.insert(name.to_string(), fixture(name, &[])?);
    }
    Ok(out)
}
