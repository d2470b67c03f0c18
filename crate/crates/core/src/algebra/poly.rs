use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::collections::HashMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use super::ring::{same_ring, RingRef};
use super::scalar::{format_scalar, scalar_gcd, Scalar};
use crate::error::{Error, Result};

/// Exponent vector, ordered graded-lexicographically: first by total
/// degree, then lexicographically with earlier ring variables weighing
/// more.  The order is fixed globally so serialized polynomials are
/// byte-stable.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(pub Box<[u16]>);

impl Monomial {
    pub fn unit(n: usize) -> Monomial {
        Monomial(vec![0u16; n].into_boxed_slice())
    }

    pub fn var(n: usize, i: usize) -> Monomial {
        let mut e = vec![0u16; n];
        e[i] = 1;
        Monomial(e.into_boxed_slice())
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    /// other / self, assuming divisibility.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        Monomial(
            other
                .0
                .iter()
                .zip(self.0.iter())
                .map(|(b, a)| b - a)
                .collect(),
        )
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => self.0.cmp(&other.0),
            ord => ord,
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse multivariate polynomial over [`Scalar`] with a fixed shared ring.
/// No zero coefficients are stored; terms are kept in canonical
/// graded-lexicographic order.
#[derive(Clone)]
pub struct Polynomial {
    ring: RingRef,
    terms: BTreeMap<Monomial, Scalar>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl Polynomial {
    pub fn zero(ring: &RingRef) -> Polynomial {
        Polynomial {
            ring: ring.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ring: &RingRef) -> Polynomial {
        Polynomial::constant(ring, Scalar::one())
    }

    pub fn constant(ring: &RingRef, c: Scalar) -> Polynomial {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::unit(ring.len()), c);
        }
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn var(ring: &RingRef, i: usize) -> Polynomial {
        let mut terms = BTreeMap::new();
        terms.insert(Monomial::var(ring.len(), i), Scalar::one());
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn var_named(ring: &RingRef, name: &str) -> Result<Polynomial> {
        let i = ring
            .var(name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
        Ok(Polynomial::var(ring, i))
    }

    pub fn from_terms(ring: &RingRef, terms: BTreeMap<Monomial, Scalar>) -> Polynomial {
        let terms = terms.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn n_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.len() <= 1 && self.terms.keys().all(|m| m.degree() == 0)
    }

    /// The constant-term coefficient.
    pub fn constant_term(&self) -> Scalar {
        self.terms
            .get(&Monomial::unit(self.ring.len()))
            .cloned()
            .unwrap_or_else(Scalar::zero)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    /// Total degree counted over coordinate-class variables only.
    pub fn coord_degree(&self) -> u32 {
        let nc = self.ring.n_coords();
        self.terms
            .keys()
            .map(|m| m.0[..nc].iter().map(|&e| e as u32).sum())
            .max()
            .unwrap_or(0)
    }

    /// Leading (largest) term in graded-lex order.
    pub fn leading(&self) -> Option<(&Monomial, &Scalar)> {
        self.terms.iter().next_back()
    }

    pub fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn assert_same_ring(&self, other: &Polynomial) {
        assert!(
            same_ring(&self.ring, &other.ring),
            "polynomials from different rings"
        );
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        self.assert_same_ring(other);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.assert_same_ring(other);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        self.assert_same_ring(other);
        let mut out = Polynomial::zero(&self.ring);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }

    pub fn mul_scalar(&self, c: &Scalar) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, k)| (m.clone(), k * c))
                .collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Polynomial {
        let mut out = Polynomial::one(&self.ring);
        for _ in 0..n {
            out = out.mul(self);
        }
        out
    }

    /// Formal partial derivative with respect to variable index `v`.
    pub fn diff(&self, v: usize) -> Polynomial {
        let mut out = Polynomial::zero(&self.ring);
        for (m, c) in &self.terms {
            let e = m.0[v];
            if e == 0 {
                continue;
            }
            let mut exp = m.0.to_vec();
            exp[v] = e - 1;
            out.add_term(Monomial(exp.into_boxed_slice()), c * Scalar::from_integer(e.into()));
        }
        out
    }

    pub fn diff_named(&self, name: &str) -> Result<Polynomial> {
        let v = self
            .ring
            .var(name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
        Ok(self.diff(v))
    }

    /// Exact substitution of scalars for all live variables.
    pub fn evaluate(&self, assignment: &HashMap<String, Scalar>) -> Result<Scalar> {
        let mut by_index: Vec<Option<Scalar>> = vec![None; self.ring.len()];
        for (name, v) in assignment {
            if let Some(i) = self.ring.var(name) {
                by_index[i] = Some(v.clone());
            }
        }
        let mut out = Scalar::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let v = by_index[i].as_ref().ok_or_else(|| {
                    Error::MissingAssignment(self.ring.name(i).to_string())
                })?;
                for _ in 0..e {
                    t *= v;
                }
            }
            out += t;
        }
        Ok(out)
    }

    /// Evaluate at a full point given by variable index.  Missing entries
    /// are an error only if the variable actually occurs.
    pub fn evaluate_indexed(&self, point: &[Option<Scalar>]) -> Result<Scalar> {
        let mut out = Scalar::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let v = point
                    .get(i)
                    .and_then(|o| o.as_ref())
                    .ok_or_else(|| Error::MissingAssignment(self.ring.name(i).to_string()))?;
                for _ in 0..e {
                    t *= v;
                }
            }
            out += t;
        }
        Ok(out)
    }

    /// Substitute a polynomial for one variable.
    pub fn substitute(&self, v: usize, value: &Polynomial) -> Polynomial {
        let mut powers: Vec<Polynomial> = vec![Polynomial::one(&self.ring)];
        let mut out = Polynomial::zero(&self.ring);
        for (m, c) in &self.terms {
            let e = m.0[v] as usize;
            while powers.len() <= e {
                let next = powers.last().unwrap().mul(value);
                powers.push(next);
            }
            let mut exp = m.0.to_vec();
            exp[v] = 0;
            let rest = Polynomial {
                ring: self.ring.clone(),
                terms: BTreeMap::from([(Monomial(exp.into_boxed_slice()), c.clone())]),
            };
            out = out.add(&rest.mul(&powers[e]));
        }
        out
    }

    /// Substitute a scalar for one variable.
    pub fn substitute_scalar(&self, v: usize, value: &Scalar) -> Polynomial {
        self.substitute(v, &Polynomial::constant(&self.ring, value.clone()))
    }

    /// Keep only terms whose coordinate-degree is at most `max`.
    pub fn truncate_coord_degree(&self, max: u32) -> Polynomial {
        let nc = self.ring.n_coords();
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.0[..nc].iter().map(|&e| e as u32).sum::<u32>() <= max)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Set every coordinate variable to zero; parameters and jets survive.
    pub fn at_coord_origin(&self) -> Polynomial {
        let nc = self.ring.n_coords();
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.0[..nc].iter().all(|&e| e == 0))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Exact multivariate division; `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Polynomial) -> Option<Polynomial> {
        self.assert_same_ring(d);
        let (dm, dc) = d.leading()?;
        let mut r = self.clone();
        let mut q = Polynomial::zero(&self.ring);
        while let Some((rm, rc)) = r.leading() {
            if !dm.divides(rm) {
                return None;
            }
            let qm = dm.quotient_of(rm);
            let qc = rc / dc;
            let mut t = Polynomial::zero(&self.ring);
            t.terms.insert(qm.clone(), qc.clone());
            q.add_term(qm, qc);
            r = r.sub(&t.mul(d));
        }
        Some(q)
    }

    /// Scalar content: positive rational g with `self / g` having coprime
    /// integer coefficients; sign chosen so the leading coefficient of the
    /// primitive part is positive.  Zero polynomial has content 0.
    pub fn content(&self) -> Scalar {
        let mut g = Scalar::zero();
        for c in self.terms.values() {
            g = scalar_gcd(&g, c);
        }
        if let Some((_, lc)) = self.leading() {
            if lc.is_negative() {
                g = -g;
            }
        }
        g
    }

    /// Greatest monomial dividing every term; unit monomial for zero.
    pub fn monomial_content(&self) -> Monomial {
        let n = self.ring.len();
        let mut min = vec![u16::MAX; n];
        for m in self.terms.keys() {
            for (a, b) in min.iter_mut().zip(m.0.iter()) {
                *a = (*a).min(*b);
            }
        }
        if self.terms.is_empty() {
            return Monomial::unit(n);
        }
        Monomial(min.into_boxed_slice())
    }

    /// Divide through by a monomial known to divide every term.
    pub fn div_monomial(&self, m: &Monomial) -> Polynomial {
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (m.quotient_of(k), c.clone()))
                .collect(),
        }
    }

    /// Primitive part: scalar content and common monomial factor removed,
    /// leading coefficient positive.
    pub fn primitive(&self) -> Polynomial {
        if self.is_zero() {
            return self.clone();
        }
        let c = self.content();
        let m = self.monomial_content();
        let inv = c.recip();
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(k, v)| (m.quotient_of(k), v * &inv))
                .collect(),
        }
    }

    /// Variables with a nonzero exponent somewhere.
    pub fn support(&self) -> Vec<usize> {
        let n = self.ring.len();
        let mut used = vec![false; n];
        for m in self.terms.keys() {
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    used[i] = true;
                }
            }
        }
        (0..n).filter(|&i| used[i]).collect()
    }

    fn format_monomial(&self, m: &Monomial) -> String {
        let mut parts = Vec::new();
        for (i, &e) in m.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if e == 1 {
                parts.push(self.ring.name(i).to_string());
            } else {
                parts.push(format!("{}^{}", self.ring.name(i), e));
            }
        }
        parts.join("*")
    }
}

impl fmt::Display for Polynomial {
    /// Canonical form: terms in descending graded-lex order, coefficient
    /// prefixed only when not ±1, e.g. `2*x1*x2 - x3 + 1/2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let mono = self.format_monomial(m);
            let abs = c.abs();
            let body = if mono.is_empty() {
                format_scalar(&abs)
            } else if abs.is_one() {
                mono
            } else {
                format!("{}*{}", format_scalar(&abs), mono)
            };
            if first {
                if c.is_negative() {
                    write!(f, "-{body}")?;
                } else {
                    write!(f, "{body}")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - {body}")?;
            } else {
                write!(f, " + {body}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Strip scalar and monomial content common to a family of polynomials,
/// normalizing the sign so the leading coefficient of the first nonzero
/// entry is positive.
pub fn strip_common_content(polys: &mut [Polynomial]) {
    let mut g = Scalar::zero();
    for p in polys.iter() {
        for c in p.terms.values() {
            g = scalar_gcd(&g, c);
        }
    }
    if g.is_zero() {
        return;
    }
    let ring = polys[0].ring.clone();
    let mut min: Vec<u16> = vec![u16::MAX; ring.len()];
    for p in polys.iter() {
        if p.is_zero() {
            continue;
        }
        for m in p.terms.keys() {
            for (a, b) in min.iter_mut().zip(m.0.iter()) {
                *a = (*a).min(*b);
            }
        }
    }
    let mono = Monomial(min.into_boxed_slice());
    let lead_negative = polys
        .iter()
        .find(|p| !p.is_zero())
        .map(|p| p.leading().unwrap().1.is_negative())
        .unwrap_or(false);
    if lead_negative {
        g = -g;
    }
    let inv = g.recip();
    for p in polys.iter_mut() {
        *p = Polynomial {
            ring: p.ring.clone(),
            terms: p
                .terms
                .iter()
                .map(|(k, v)| (mono.quotient_of(k), v * &inv))
                .collect(),
        };
    }
}
