//! Shared helpers for the integration tests: the published 10-equation
//! Pfaffian displays of the six reference charts, as annihilator rows.

use flagtower_core::algebra::{Polynomial, RationalFunction, RingRef};
use flagtower_core::charts::{xi, yi, Chart, T};

pub fn v(ring: &RingRef, name: &str) -> Polynomial {
    Polynomial::var_named(ring, name).unwrap()
}

/// Covector "d<unit> - coeff * d<pivot>" as coefficients against the
/// coordinate differentials.
pub fn form(ring: &RingRef, unit: usize, pivot: usize, coeff: Polynomial) -> Vec<Polynomial> {
    let mut out = vec![Polynomial::zero(ring); ring.n_coords()];
    out[unit] = Polynomial::one(ring);
    out[pivot] = coeff.neg();
    out
}

/// The four forms shared by every length-5 fixture here: the base contact
/// pair and the stage-2 letter-2 pair.
fn common_head(ring: &RingRef) -> Vec<Vec<Polynomial>> {
    vec![
        form(ring, xi(0), T, v(ring, "x1")),
        form(ring, yi(0), T, v(ring, "y1")),
        form(ring, T, xi(1), v(ring, "x2")),
        form(ring, yi(1), xi(1), v(ring, "y2")),
    ]
}

fn one_plus(ring: &RingRef, name: &str) -> Polynomial {
    Polynomial::one(ring).add(&v(ring, name))
}

fn plus(ring: &RingRef, a: &str, b: &str) -> Polynomial {
    v(ring, a).add(&v(ring, b))
}

pub fn golden_forms(name: &str, ring: &RingRef) -> Vec<Vec<Polynomial>> {
    let mut forms = common_head(ring);
    match name {
        "zzz" => {
            forms.push(form(ring, xi(1), yi(2), v(ring, "x3")));
            forms.push(form(ring, xi(2), yi(2), v(ring, "y3")));
            forms.push(form(ring, xi(3), yi(2), one_plus(ring, "x4")));
            forms.push(form(ring, yi(3), yi(2), one_plus(ring, "y4")));
            forms.push(form(ring, yi(2), xi(4), v(ring, "x5")));
            forms.push(form(ring, yi(4), xi(4), plus(ring, "a", "y5")));
        }
        "212" => {
            forms.push(form(ring, xi(1), xi(2), v(ring, "x3")));
            forms.push(form(ring, yi(2), xi(2), v(ring, "y3")));
            forms.push(form(ring, xi(3), xi(2), one_plus(ring, "x4")));
            forms.push(form(ring, yi(3), xi(2), one_plus(ring, "y4")));
            forms.push(form(ring, xi(2), xi(4), v(ring, "x5")));
            forms.push(form(ring, yi(4), xi(4), plus(ring, "c", "y5")));
        }
        "121" => {
            forms.push(form(ring, xi(2), xi(1), one_plus(ring, "x3")));
            forms.push(form(ring, yi(2), xi(1), v(ring, "y3")));
            forms.push(form(ring, xi(1), xi(3), v(ring, "x4")));
            forms.push(form(ring, yi(3), xi(3), one_plus(ring, "y4")));
            forms.push(form(ring, xi(4), xi(3), v(ring, "x5")));
            forms.push(form(ring, yi(4), xi(3), plus(ring, "c", "y5")));
        }
        "123one" | "121two" | "121three" => {
            let (cx3, cy3) = match name {
                "123one" => (one_plus(ring, "x3"), v(ring, "y3")),
                "121two" => (v(ring, "x3"), one_plus(ring, "y3")),
                _ => (v(ring, "x3"), v(ring, "y3")),
            };
            forms.push(form(ring, xi(2), xi(1), cx3));
            forms.push(form(ring, yi(2), xi(1), cy3));
            forms.push(form(ring, xi(1), yi(3), v(ring, "x4")));
            forms.push(form(ring, xi(3), yi(3), v(ring, "y4")));
            forms.push(form(ring, xi(4), yi(3), plus(ring, "b", "x5")));
            forms.push(form(ring, yi(4), yi(3), plus(ring, "c", "y5")));
        }
        other => panic!("no golden forms for {other}"),
    }
    forms
}

pub fn annihilates(chart: &Chart, form: &[Polynomial]) -> bool {
    let d = chart.distribution().unwrap();
    d.generators().iter().all(|g| {
        let mut acc = RationalFunction::zero(chart.ring());
        for (c, coef) in form.iter().zip(g.coeffs()) {
            acc = acc.add(&coef.mul_poly(c));
        }
        acc.is_zero()
    })
}
