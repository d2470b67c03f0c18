//! Differential-geometric engine: Lie brackets, derived flags, Cauchy
//! characteristics, sandwich verification, pushforwards under diagonal
//! affine maps, and span equality of distributions.
//!
//! All span and membership questions are decided exactly over the
//! rational-function field; evaluation at points serves only as a spot
//! check.

use num_traits::Zero;

use crate::algebra::matrix::{bareiss_echelon, kernel_of_poly_rows};
use crate::algebra::{Polynomial, RationalFunction, RfMatrix, RingRef, Scalar};
use crate::charts::Chart;
use crate::error::{Error, Result};

/// A vector field on a chart: one rational-function coefficient per
/// chart coordinate.  Ring variables beyond the coordinates (parameters,
/// jet symbols) may appear inside coefficients but carry no slot.
#[derive(Clone, Debug)]
pub struct VectorField {
    ring: RingRef,
    coeffs: Vec<RationalFunction>,
}

impl VectorField {
    pub fn new(ring: &RingRef, coeffs: Vec<RationalFunction>) -> VectorField {
        assert_eq!(
            coeffs.len(),
            ring.n_coords(),
            "one coefficient per coordinate"
        );
        VectorField {
            ring: ring.clone(),
            coeffs,
        }
    }

    pub fn from_polys(ring: &RingRef, coeffs: Vec<Polynomial>) -> VectorField {
        VectorField::new(
            ring,
            coeffs.into_iter().map(RationalFunction::from_poly).collect(),
        )
    }

    pub fn zero(ring: &RingRef) -> VectorField {
        VectorField::new(
            ring,
            (0..ring.n_coords()).map(|_| RationalFunction::zero(ring)).collect(),
        )
    }

    /// The coordinate field for coordinate index `i`.
    pub fn coordinate(ring: &RingRef, i: usize) -> VectorField {
        assert!(i < ring.n_coords());
        let mut v = VectorField::zero(ring);
        v.coeffs[i] = RationalFunction::one(ring);
        v
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn coeff(&self, i: usize) -> &RationalFunction {
        &self.coeffs[i]
    }

    pub fn coeffs(&self) -> &[RationalFunction] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, other: &VectorField) -> VectorField {
        VectorField::new(
            &self.ring,
            self.coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a.add(b))
                .collect(),
        )
    }

    pub fn sub(&self, other: &VectorField) -> VectorField {
        VectorField::new(
            &self.ring,
            self.coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a.sub(b))
                .collect(),
        )
    }

    pub fn neg(&self) -> VectorField {
        VectorField::new(&self.ring, self.coeffs.iter().map(|c| c.neg()).collect())
    }

    pub fn scale(&self, f: &RationalFunction) -> VectorField {
        VectorField::new(&self.ring, self.coeffs.iter().map(|c| c.mul(f)).collect())
    }

    pub fn scale_poly(&self, p: &Polynomial) -> VectorField {
        VectorField::new(&self.ring, self.coeffs.iter().map(|c| c.mul_poly(p)).collect())
    }
}

/// Standard coordinate bracket [V, W] = V(W) - W(V); derivatives run over
/// the chart coordinates only.
pub fn lie_bracket(v: &VectorField, w: &VectorField) -> Result<VectorField> {
    if !crate::algebra::ring::same_ring(&v.ring, &w.ring) {
        return Err(Error::RingMismatch);
    }
    let n = v.ring.n_coords();
    let mut coeffs = Vec::with_capacity(n);
    for i in 0..n {
        let mut acc = RationalFunction::zero(&v.ring);
        for j in 0..n {
            if !v.coeffs[j].is_zero() {
                let d = w.coeffs[i].diff(j);
                if !d.is_zero() {
                    acc = acc.add(&v.coeffs[j].mul(&d));
                }
            }
            if !w.coeffs[j].is_zero() {
                let d = v.coeffs[i].diff(j);
                if !d.is_zero() {
                    acc = acc.sub(&w.coeffs[j].mul(&d));
                }
            }
        }
        coeffs.push(acc);
    }
    Ok(VectorField::new(&v.ring, coeffs))
}

/// A distribution presented by linearly independent generators.
#[derive(Clone, Debug)]
pub struct Distribution {
    ring: RingRef,
    generators: Vec<VectorField>,
}

impl Distribution {
    pub fn new(generators: Vec<VectorField>) -> Result<Distribution> {
        assert!(!generators.is_empty(), "a distribution needs generators");
        let ring = generators[0].ring().clone();
        for g in &generators {
            if !crate::algebra::ring::same_ring(&ring, g.ring()) {
                return Err(Error::RingMismatch);
            }
        }
        let m = coeff_matrix(&ring, &generators);
        if m.generic_rank() != generators.len() {
            return Err(Error::DependentGenerators);
        }
        Ok(Distribution { ring, generators })
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn generators(&self) -> &[VectorField] {
        &self.generators
    }
}

/// Generators as a rows-by-coordinates matrix over the function field.
pub fn coeff_matrix(ring: &RingRef, fields: &[VectorField]) -> RfMatrix {
    RfMatrix::new(ring, fields.iter().map(|f| f.coeffs.clone()).collect())
}

fn span_rank(ring: &RingRef, fields: &[VectorField]) -> usize {
    if fields.is_empty() {
        return 0;
    }
    coeff_matrix(ring, fields).generic_rank()
}

/// Whether `v` lies in the pointwise (function-field) span of `fields`.
pub fn in_span(ring: &RingRef, fields: &[VectorField], v: &VectorField) -> bool {
    if v.is_zero() {
        return true;
    }
    let r0 = span_rank(ring, fields);
    let mut all = fields.to_vec();
    all.push(v.clone());
    span_rank(ring, &all) == r0
}

/// True iff the two generator sets span the same module over the
/// rational-function field.
pub fn distribution_equal(d1: &Distribution, d2: &Distribution) -> bool {
    if !crate::algebra::ring::same_ring(&d1.ring, &d2.ring) {
        return false;
    }
    let r1 = span_rank(&d1.ring, &d1.generators);
    let r2 = span_rank(&d2.ring, &d2.generators);
    if r1 != r2 {
        return false;
    }
    let mut all = d1.generators.clone();
    all.extend(d2.generators.iter().cloned());
    span_rank(&d1.ring, &all) == r1
}

/// One level of a derived flag, largest object last in `FlagReport`.
#[derive(Clone, Debug)]
pub struct FlagLevel {
    /// Number of bracket steps below the starting distribution (0 = the
    /// distribution itself).
    pub depth: usize,
    pub generator_count: usize,
    pub generic_rank: usize,
    /// None when some generator coefficient is undefined at the origin.
    pub rank_at_origin: Option<usize>,
    /// Rank of the Cauchy-characteristic module, when computed.
    pub cauchy_rank: Option<usize>,
    /// Whether the Cauchy module at this level sits inside the previous
    /// (smaller) level, when checked.
    pub cauchy_in_previous: Option<bool>,
    /// Corank of the Cauchy module inside the previous level, when checked.
    pub cauchy_corank_in_previous: Option<usize>,
}

/// Rank and sandwich data along a derived flag.
#[derive(Clone, Debug)]
pub struct FlagReport {
    pub levels: Vec<FlagLevel>,
}

impl FlagReport {
    pub fn generic_ranks(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.generic_rank).collect()
    }
}

/// Generator bases of the derived flag: entry 0 is the distribution, each
/// following entry adds all pairwise brackets (deduplicated by span).
pub fn flag_generator_levels(d: &Distribution, depth: usize) -> Result<Vec<Vec<VectorField>>> {
    let ring = d.ring.clone();
    let dim = ring.n_coords();
    let mut levels: Vec<Vec<VectorField>> = vec![d.generators.clone()];
    for _ in 0..depth {
        let cur = levels.last().unwrap();
        let mut next = cur.clone();
        let mut rank = span_rank(&ring, &next);
        if rank == dim {
            levels.push(next);
            continue;
        }
        'outer: for i in 0..cur.len() {
            for j in i + 1..cur.len() {
                let br = lie_bracket(&cur[i], &cur[j])?;
                if br.is_zero() {
                    continue;
                }
                let mut cand = next.clone();
                cand.push(br);
                let r2 = span_rank(&ring, &cand);
                if r2 > rank {
                    rank = r2;
                    next = cand;
                    if rank == dim {
                        break 'outer;
                    }
                }
            }
        }
        levels.push(next);
    }
    Ok(levels)
}

fn origin_point(ring: &RingRef) -> Vec<Option<Scalar>> {
    (0..ring.len())
        .map(|i| {
            if i < ring.n_coords() {
                Some(Scalar::zero())
            } else {
                None
            }
        })
        .collect()
}

/// Rank at a point with every coordinate given and every parameter left
/// symbolic; fails (None) only on vanishing denominators.
fn rank_at_origin(ring: &RingRef, fields: &[VectorField]) -> Option<usize> {
    // parameters survive: evaluate coordinates only, then take generic rank
    let pt = origin_point(ring);
    let rows: Option<Vec<Vec<Polynomial>>> = fields
        .iter()
        .map(|f| {
            f.coeffs
                .iter()
                .map(|c| eval_coords(c, &pt))
                .collect::<Option<Vec<_>>>()
        })
        .collect();
    rows.map(|rows| {
        let (_, pivots) = bareiss_echelon(rows);
        pivots.len()
    })
}

/// Substitute the coordinate values of `pt` into a rational function,
/// leaving parameters symbolic; None when the denominator vanishes.
fn eval_coords(f: &RationalFunction, pt: &[Option<Scalar>]) -> Option<Polynomial> {
    let num = subst_scalars(f.numer(), pt);
    let den = subst_scalars(f.denom(), pt);
    if den.is_zero() {
        return None;
    }
    num.div_exact(&den).or_else(|| {
        if den.is_constant() {
            Some(num.mul_scalar(&den.constant_term().recip()))
        } else {
            None
        }
    })
}

fn subst_scalars(p: &Polynomial, pt: &[Option<Scalar>]) -> Polynomial {
    let mut out = p.clone();
    for (i, v) in pt.iter().enumerate() {
        if let Some(s) = v {
            out = out.substitute_scalar(i, s);
        }
    }
    out
}

/// Derived flag of `d` down to the given bracket depth, with generic and
/// origin ranks per level.
pub fn derived_flag(d: &Distribution, depth: usize) -> Result<FlagReport> {
    let levels = flag_generator_levels(d, depth)?;
    let ring = d.ring.clone();
    let mut out = Vec::new();
    for (k, gens) in levels.iter().enumerate() {
        out.push(FlagLevel {
            depth: k,
            generator_count: gens.len(),
            generic_rank: span_rank(&ring, gens),
            rank_at_origin: rank_at_origin(&ring, gens),
            cauchy_rank: None,
            cauchy_in_previous: None,
            cauchy_corank_in_previous: None,
        });
    }
    Ok(FlagReport { levels: out })
}

/// Basis of the Cauchy-characteristic module of the span of `gens`:
/// fields V in the span with [V, G] back in the span for every generator.
pub fn cauchy_of_generators(ring: &RingRef, gens: &[VectorField]) -> Result<Vec<VectorField>> {
    let k = gens.len();
    let full = span_rank(ring, gens) == ring.n_coords();
    if full {
        return Ok(gens.to_vec());
    }
    // annihilator covectors of the span
    let ann = coeff_matrix(ring, gens).rf_kernel();
    // condition rows: for V = sum f_i G_i, each bracket residue must be
    // annihilated, i.e. sum_i f_i * <ann_l, [G_i, G_j]> = 0
    let mut rows: Vec<Vec<Polynomial>> = Vec::new();
    let mut brackets: Vec<Vec<VectorField>> = Vec::new();
    for i in 0..k {
        let mut bi = Vec::new();
        for j in 0..k {
            bi.push(lie_bracket(&gens[i], &gens[j])?);
        }
        brackets.push(bi);
    }
    for j in 0..k {
        for covec in &ann {
            let mut row = Vec::with_capacity(k);
            for bi in brackets.iter() {
                let mut s = RationalFunction::zero(ring);
                for (c, coef) in covec.iter().zip(bi[j].coeffs()) {
                    if !c.is_zero() && !coef.is_zero() {
                        s = s.add(&coef.mul_poly(c));
                    }
                }
                row.push(s);
            }
            if row.iter().all(|e| e.is_zero()) {
                continue;
            }
            // clear denominators within the row
            let mut scale = Polynomial::one(ring);
            for e in &row {
                if !e.denom().is_constant() {
                    scale = scale.mul(e.denom());
                }
            }
            let polys: Vec<Polynomial> = row
                .iter()
                .map(|e| {
                    let p = e.numer().mul(&scale);
                    p.div_exact(e.denom()).unwrap_or(p)
                })
                .collect();
            rows.push(polys);
        }
    }
    let solutions = if rows.is_empty() {
        // no conditions: the whole span is characteristic
        (0..k)
            .map(|i| {
                let mut v = vec![Polynomial::zero(ring); k];
                v[i] = Polynomial::one(ring);
                v
            })
            .collect()
    } else {
        kernel_of_poly_rows(ring, rows, k)
    };
    let mut basis = Vec::new();
    for f in solutions {
        let mut v = VectorField::zero(ring);
        for (i, fi) in f.iter().enumerate() {
            if !fi.is_zero() {
                v = v.add(&gens[i].scale_poly(fi));
            }
        }
        if !v.is_zero() {
            basis.push(v);
        }
    }
    Ok(basis)
}

/// Cauchy characteristics of a distribution; empty result encodes the
/// zero module.
pub fn cauchy_characteristics(d: &Distribution) -> Result<Vec<VectorField>> {
    cauchy_of_generators(&d.ring, &d.generators)
}

/// Builds the full derived flag of the chart's distribution and checks,
/// at every level below the top, that the Cauchy-characteristic module
/// sits inside the previous (smaller) level, recording its corank there.
pub fn verify_sandwich(chart: &Chart) -> Result<FlagReport> {
    let d = chart.distribution()?;
    let depth = chart.length();
    let levels = flag_generator_levels(&d, depth)?;
    let ring = d.ring.clone();
    let mut out = Vec::new();
    for (k, gens) in levels.iter().enumerate() {
        let generic_rank = span_rank(&ring, gens);
        let c = cauchy_of_generators(&ring, gens)?;
        // the sandwich condition applies to intermediate levels only: the
        // full tangent space at the top is trivially its own Cauchy module
        let (cauchy_in_previous, cauchy_corank) = if k == 0 || generic_rank == ring.n_coords() {
            (None, None)
        } else {
            let prev = &levels[k - 1];
            let inside = c.iter().all(|v| in_span(&ring, prev, v));
            let prev_rank = span_rank(&ring, prev);
            (Some(inside), Some(prev_rank - c.len()))
        };
        let cauchy_rank = Some(c.len());
        out.push(FlagLevel {
            depth: k,
            generator_count: gens.len(),
            generic_rank,
            rank_at_origin: rank_at_origin(&ring, gens),
            cauchy_rank,
            cauchy_in_previous,
            cauchy_corank_in_previous: cauchy_corank,
        });
    }
    Ok(FlagReport { levels: out })
}

/// Diagonal affine coordinate change: old_i = scale_i * new_i + shift_i.
/// Scale factors must be nonzero and free of chart coordinates (constants
/// or parameter monomials).
#[derive(Clone, Debug)]
pub struct DiagonalAffineMap {
    ring: RingRef,
    scale: Vec<RationalFunction>,
    shift: Vec<Scalar>,
}

impl DiagonalAffineMap {
    pub fn new(
        ring: &RingRef,
        scale: Vec<RationalFunction>,
        shift: Vec<Scalar>,
    ) -> Result<DiagonalAffineMap> {
        let n = ring.n_coords();
        assert_eq!(scale.len(), n);
        assert_eq!(shift.len(), n);
        for (i, s) in scale.iter().enumerate() {
            if s.is_zero() || depends_on_coords(s, ring) {
                return Err(Error::NonInvertibleMap(ring.name(i).to_string()));
            }
        }
        Ok(DiagonalAffineMap {
            ring: ring.clone(),
            scale,
            shift,
        })
    }

    pub fn identity(ring: &RingRef) -> DiagonalAffineMap {
        let n = ring.n_coords();
        DiagonalAffineMap {
            ring: ring.clone(),
            scale: (0..n).map(|_| RationalFunction::one(ring)).collect(),
            shift: vec![Scalar::zero(); n],
        }
    }

    pub fn scale(&self) -> &[RationalFunction] {
        &self.scale
    }
}

fn depends_on_coords(f: &RationalFunction, ring: &RingRef) -> bool {
    let check = |p: &Polynomial| {
        p.support().iter().any(|&v| v < ring.n_coords())
    };
    check(f.numer()) || check(f.denom())
}

/// Evaluate `p` after replacing each coordinate x_i by
/// scale_i * x_i + shift_i; parameters pass through.
fn subst_affine(p: &Polynomial, map: &DiagonalAffineMap) -> RationalFunction {
    let ring = p.ring();
    let mut acc = RationalFunction::zero(ring);
    for (mono, coef) in p.terms() {
        let mut term = RationalFunction::constant(ring, coef.clone());
        for (v, &e) in mono.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            let base = if v < ring.n_coords() {
                let x = Polynomial::var(ring, v);
                map.scale[v]
                    .mul_poly(&x)
                    .add(&RationalFunction::constant(ring, map.shift[v].clone()))
            } else {
                RationalFunction::from_poly(Polynomial::var(ring, v))
            };
            for _ in 0..e {
                term = term.mul(&base);
            }
        }
        acc = acc.add(&term);
    }
    acc
}

/// Chain-rule pushforward of `v` under the diagonal affine map.
pub fn pushforward(map: &DiagonalAffineMap, v: &VectorField) -> Result<VectorField> {
    if !crate::algebra::ring::same_ring(&map.ring, v.ring()) {
        return Err(Error::RingMismatch);
    }
    let mut coeffs = Vec::with_capacity(map.ring.n_coords());
    for (i, c) in v.coeffs.iter().enumerate() {
        if c.is_zero() {
            coeffs.push(RationalFunction::zero(&map.ring));
            continue;
        }
        let num = subst_affine(c.numer(), map);
        let den = subst_affine(c.denom(), map);
        let composed = num.div(&den);
        coeffs.push(composed.div(&map.scale[i]));
    }
    Ok(VectorField::new(&map.ring, coeffs))
}
