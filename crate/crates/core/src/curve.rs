//! Complete binary Edwards curve arithmetic over GF(2^n).
//!
//! The curve d1(x+y) + d2(x^2+y^2) = xy + xy(x+y) + x^2y^2 with d1 != 0
//! and Tr(d2) = 1 carries a single addition law valid for every pair of
//! points, identity (0,0) included. This module is the classical ground
//! truth for the synthesized point adders and the Shor pipeline, plus
//! the toy-curve search used by the exhaustive sweeps.

use thiserror::Error;

use crate::field::{FieldElement, FieldError, FieldSpec};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CurveError {
    #[error("field error: {0}")]
    Field(#[from] FieldError),
    #[error("d1 must be non-zero")]
    ZeroD1,
    #[error("Tr(d2) must be 1")]
    BadTrace,
    #[error("completeness violation: addition denominator vanished for ({0}, {1}) + ({2}, {3})")]
    CompletenessViolation(String, String, String, String),
    #[error("field too large for exhaustive enumeration (n={0} > {1})")]
    TooLarge(usize, usize),
    #[error("no toy curve with a point of order >= 4 found for n={0}")]
    SearchExhausted(usize),
}

/// Curve parameters (d1, d2) over a fixed field.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CurveSpec {
    field: FieldSpec,
    d1: FieldElement,
    d2: FieldElement,
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct AffinePoint {
    pub x: FieldElement,
    pub y: FieldElement,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ProjectivePoint {
    pub x: FieldElement,
    pub y: FieldElement,
    pub z: FieldElement,
}

/// Per-call field operation census of the projective addition schedule.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub struct FieldOpCounts {
    pub mul: usize,
    pub const_mul: usize,
    pub square: usize,
    pub add: usize,
}

impl AffinePoint {
    pub fn identity(n: usize) -> Self {
        AffinePoint { x: FieldElement::zero(n), y: FieldElement::zero(n) }
    }

    pub fn is_identity(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn to_projective(&self, n: usize) -> ProjectivePoint {
        ProjectivePoint { x: self.x.clone(), y: self.y.clone(), z: FieldElement::one(n) }
    }
}

impl ProjectivePoint {
    pub fn identity(n: usize) -> Self {
        AffinePoint::identity(n).to_projective(n)
    }
}

impl CurveSpec {
    pub fn new(
        field: FieldSpec,
        d1: FieldElement,
        d2: FieldElement,
    ) -> Result<Self, CurveError> {
        if d1.is_zero() {
            return Err(CurveError::ZeroD1);
        }
        if field.trace(&d2) != 1 {
            return Err(CurveError::BadTrace);
        }
        Ok(CurveSpec { field, d1, d2 })
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.field.n()
    }

    pub fn d1(&self) -> &FieldElement {
        &self.d1
    }

    pub fn d2(&self) -> &FieldElement {
        &self.d2
    }

    /// Text form used in circuit headers and CLI output:
    /// `edwards n=<n> poly=0x<hex> d1=0x<hex> d2=0x<hex>`.
    pub fn describe(&self) -> String {
        format!(
            "edwards n={} poly=0x{} d1=0x{} d2=0x{}",
            self.n(),
            self.field.modulus_hex(),
            self.d1.to_hex(),
            self.d2.to_hex()
        )
    }

    pub fn parse_description(s: &str) -> Result<Self, CurveError> {
        let err = |m: &str| CurveError::Field(FieldError::BadDescription(m.to_string()));
        let mut parts = s.split_whitespace();
        if parts.next() != Some("edwards") {
            return Err(err("expected leading 'edwards'"));
        }
        let (mut n, mut poly, mut d1, mut d2) = (None, None, None, None);
        for part in parts {
            match part.split_once('=') {
                Some(("n", v)) => n = Some(v.parse::<usize>().map_err(|_| err("bad n"))?),
                Some(("poly", v)) => poly = Some(v.to_string()),
                Some(("d1", v)) => d1 = Some(v.to_string()),
                Some(("d2", v)) => d2 = Some(v.to_string()),
                _ => return Err(err("unknown key")),
            }
        }
        let n = n.ok_or_else(|| err("missing n"))?;
        let poly = poly.ok_or_else(|| err("missing poly"))?;
        let field = FieldSpec::parse_description(&format!("gf2n n={n} poly={poly}"))?;
        let d1 = FieldElement::from_hex(n, &d1.ok_or_else(|| err("missing d1"))?)
            .ok_or_else(|| err("bad d1 hex"))?;
        let d2 = FieldElement::from_hex(n, &d2.ok_or_else(|| err("missing d2"))?)
            .ok_or_else(|| err("bad d2 hex"))?;
        Self::new(field, d1, d2)
    }

    /// Exact test of the curve equation at (x, y).
    pub fn on_curve(&self, p: &AffinePoint) -> bool {
        let f = &self.field;
        let mul = |a: &FieldElement, b: &FieldElement| f.mul_schoolbook(a, b).unwrap();
        let add = |a: &FieldElement, b: &FieldElement| f.add(a, b).unwrap();
        let xy = mul(&p.x, &p.y);
        let xpy = add(&p.x, &p.y);
        let x2 = f.square(&p.x);
        let y2 = f.square(&p.y);
        let lhs = add(&mul(&self.d1, &xpy), &mul(&self.d2, &add(&x2, &y2)));
        let rhs = add(&add(&xy, &mul(&xy, &xpy)), &mul(&x2, &y2));
        lhs == rhs
    }

    /// The affine group law; total on a complete curve, so a vanishing
    /// denominator is reported as a hard error rather than handled.
    pub fn affine_add(
        &self,
        p1: &AffinePoint,
        p2: &AffinePoint,
    ) -> Result<AffinePoint, CurveError> {
        let f = &self.field;
        let mul = |a: &FieldElement, b: &FieldElement| f.mul_schoolbook(a, b).unwrap();
        let add = |a: &FieldElement, b: &FieldElement| f.add(a, b).unwrap();
        let one = FieldElement::one(self.n());
        let (x1, y1, x2, y2) = (&p1.x, &p1.y, &p2.x, &p2.y);

        let x1x1sq = add(x1, &f.square(x1)); // x1 + x1^2
        let y1y1sq = add(y1, &f.square(y1));
        let w2 = add(x2, y2);
        let den_x = add(&self.d1, &mul(&x1x1sq, &w2));
        let den_y = add(&self.d1, &mul(&y1y1sq, &w2));
        if den_x.is_zero() || den_y.is_zero() {
            return Err(CurveError::CompletenessViolation(
                p1.x.to_hex(),
                p1.y.to_hex(),
                p2.x.to_hex(),
                p2.y.to_hex(),
            ));
        }
        let w1 = add(x1, y1);
        let d2w1w2 = mul(&self.d2, &mul(&w1, &w2));
        // x2*(y1+y2+1) + y1*y2
        let tx = add(&mul(x2, &add(&add(y1, y2).clone(), &one)), &mul(y1, y2));
        let num_x = add(&add(&mul(&self.d1, &add(x1, x2)), &d2w1w2), &mul(&x1x1sq, &tx));
        let ty = add(&mul(y2, &add(&add(x1, x2), &one)), &mul(x1, x2));
        let num_y = add(&add(&mul(&self.d1, &add(y1, y2)), &d2w1w2), &mul(&y1y1sq, &ty));
        Ok(AffinePoint {
            x: mul(&num_x, &f.inv_fermat(&den_x)),
            y: mul(&num_y, &f.inv_fermat(&den_y)),
        })
    }

    /// Projective addition via the 21M + 4C + 1S + 15A schedule.
    pub fn projective_add_counted(
        &self,
        p1: &ProjectivePoint,
        p2: &ProjectivePoint,
    ) -> (ProjectivePoint, FieldOpCounts) {
        let f = &self.field;
        let mut counts = FieldOpCounts::default();
        let mul = |c: &mut FieldOpCounts, a: &FieldElement, b: &FieldElement| {
            c.mul += 1;
            f.mul_schoolbook(a, b).unwrap()
        };
        let cmul = |c: &mut FieldOpCounts, k: &FieldElement, a: &FieldElement| {
            c.const_mul += 1;
            f.mul_schoolbook(k, a).unwrap()
        };
        let add = |c: &mut FieldOpCounts, a: &FieldElement, b: &FieldElement| {
            c.add += 1;
            f.add(a, b).unwrap()
        };
        let (x1, y1, z1) = (&p1.x, &p1.y, &p1.z);
        let (x2, y2, z2) = (&p2.x, &p2.y, &p2.z);

        let w1 = add(&mut counts, x1, y1);
        let w2 = add(&mut counts, x2, y2);
        let t1 = add(&mut counts, x1, z1);
        let t2 = add(&mut counts, y1, z1);
        let a = mul(&mut counts, x1, &t1);
        let b = mul(&mut counts, y1, &t2);
        let c = mul(&mut counts, z1, z2);
        let d = mul(&mut counts, &w2, z2);
        counts.square += 1;
        let csq = f.square(&c);
        let e = cmul(&mut counts, &self.d1, &csq);
        let ga = cmul(&mut counts, &self.d1, z2);
        let gb = cmul(&mut counts, &self.d2, &w2);
        let g = add(&mut counts, &ga, &gb);
        let hh = mul(&mut counts, &g, &w1);
        let h = mul(&mut counts, &hh, &c);
        let ia = cmul(&mut counts, &self.d1, z1);
        let i = mul(&mut counts, &ia, &c);
        let ad = mul(&mut counts, &a, &d);
        let u = add(&mut counts, &e, &ad);
        let bd = mul(&mut counts, &b, &d);
        let v = add(&mut counts, &e, &bd);
        let s = mul(&mut counts, &u, &v);

        let sy = mul(&mut counts, &s, y1);
        let yz2 = add(&mut counts, y2, z2);
        let ayz = mul(&mut counts, &a, &yz2);
        let iayz = add(&mut counts, &i, &ayz);
        let x2t = mul(&mut counts, x2, &iayz);
        let hx = add(&mut counts, &h, &x2t);
        let tv = mul(&mut counts, &hx, &v);
        let tvz = mul(&mut counts, &tv, z1);
        let x3 = add(&mut counts, &sy, &tvz);

        let sx = mul(&mut counts, &s, x1);
        let xz2 = add(&mut counts, x2, z2);
        let bxz = mul(&mut counts, &b, &xz2);
        let ibxz = add(&mut counts, &i, &bxz);
        let y2t = mul(&mut counts, y2, &ibxz);
        let hy = add(&mut counts, &h, &y2t);
        let uu = mul(&mut counts, &hy, &u);
        let uuz = mul(&mut counts, &uu, z1);
        let y3 = add(&mut counts, &sx, &uuz);

        let z3 = mul(&mut counts, &s, z1);
        assert!(!z3.is_zero(), "Z3 = S*Z1 vanished on a complete curve");
        (ProjectivePoint { x: x3, y: y3, z: z3 }, counts)
    }

    pub fn projective_add(&self, p1: &ProjectivePoint, p2: &ProjectivePoint) -> ProjectivePoint {
        self.projective_add_counted(p1, p2).0
    }

    /// Classical normalization (X/Z, Y/Z); Z must be non-zero.
    pub fn to_affine(&self, p: &ProjectivePoint) -> AffinePoint {
        assert!(!p.z.is_zero(), "projective point with Z = 0");
        let zi = self.field.inv_fermat(&p.z);
        AffinePoint {
            x: self.field.mul_schoolbook(&p.x, &zi).unwrap(),
            y: self.field.mul_schoolbook(&p.y, &zi).unwrap(),
        }
    }

    pub fn projectively_equal(&self, p: &ProjectivePoint, q: &ProjectivePoint) -> bool {
        // cross-multiplication avoids inversions
        let f = &self.field;
        let m = |a: &FieldElement, b: &FieldElement| f.mul_schoolbook(a, b).unwrap();
        m(&p.x, &q.z) == m(&q.x, &p.z) && m(&p.y, &q.z) == m(&q.y, &p.z)
    }

    /// Classical double-and-add oracle; scalar_mul(0, p) is the identity.
    pub fn scalar_mul(&self, k: u64, p: &AffinePoint) -> AffinePoint {
        let mut acc = AffinePoint::identity(self.n());
        let mut base = p.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.affine_add(&acc, &base).expect("complete curve");
            }
            k >>= 1;
            if k > 0 {
                base = self.affine_add(&base, &base).expect("complete curve");
            }
        }
        acc
    }

    /// kP + lQ by composing the scalar-multiplication oracles.
    pub fn double_scalar(&self, k: u64, l: u64, p: &AffinePoint, q: &AffinePoint) -> AffinePoint {
        self.affine_add(&self.scalar_mul(k, p), &self.scalar_mul(l, q))
            .expect("complete curve")
    }

    /// All affine points, in lexicographic (x, y) index order.
    pub fn enumerate_points(&self) -> Result<Vec<AffinePoint>, CurveError> {
        let n = self.n();
        if n > 16 {
            return Err(CurveError::TooLarge(n, 16));
        }
        let mut points = Vec::new();
        for xi in 0..1u64 << n {
            for yi in 0..1u64 << n {
                let p = AffinePoint {
                    x: FieldElement::from_index(n, xi),
                    y: FieldElement::from_index(n, yi),
                };
                if self.on_curve(&p) {
                    points.push(p);
                }
            }
        }
        Ok(points)
    }

    /// Smallest m >= 1 with m*p = identity, by iterated addition.
    pub fn order_of(&self, p: &AffinePoint) -> u64 {
        let mut acc = p.clone();
        let mut m = 1;
        while !acc.is_identity() {
            acc = self.affine_add(&acc, p).expect("complete curve");
            m += 1;
        }
        m
    }
}

/// A deterministic small curve together with a generator of order >= 4.
#[derive(Clone, Debug)]
pub struct ToyCurve {
    pub curve: CurveSpec,
    pub generator: AffinePoint,
    pub order: u64,
}

/// Searches (d1, d2) lexicographically for the first complete curve with
/// a point of order >= 4, and returns the first point of maximal order.
pub fn find_toy_curve(spec: &FieldSpec) -> Result<ToyCurve, CurveError> {
    let n = spec.n();
    if n > 8 {
        return Err(CurveError::TooLarge(n, 8));
    }
    for d1i in 1..1u64 << n {
        for d2i in 0..1u64 << n {
            let d1 = FieldElement::from_index(n, d1i);
            let d2 = FieldElement::from_index(n, d2i);
            let curve = match CurveSpec::new(spec.clone(), d1, d2) {
                Ok(c) => c,
                Err(_) => continue,
            };
            let points = curve.enumerate_points()?;
            let mut best: Option<(u64, AffinePoint)> = None;
            for p in &points {
                let ord = curve.order_of(p);
                if best.as_ref().is_none_or(|(b, _)| ord > *b) {
                    best = Some((ord, p.clone()));
                }
            }
            if let Some((ord, generator)) = best {
                if ord >= 4 {
                    return Ok(ToyCurve { curve, generator, order: ord });
                }
            }
        }
    }
    Err(CurveError::SearchExhausted(n))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toy(n: usize) -> ToyCurve {
        find_toy_curve(&FieldSpec::with_default_modulus(n).unwrap()).unwrap()
    }

    #[test]
    fn toy_search_succeeds_for_n3() {
        let t = toy(3);
        assert_eq!(t.curve.field().trace(t.curve.d2()), 1);
        assert!(t.curve.on_curve(&t.generator));
        assert!(t.order >= 4);
    }

    #[test]
    fn identity_is_on_curve() {
        let t = toy(3);
        assert!(t.curve.on_curve(&AffinePoint::identity(3)));
    }

    #[test]
    fn zero_one_point_iff_d1_equals_d2() {
        // (0,1) satisfies the equation iff d1 = d2
        for n in [3, 4] {
            let spec = FieldSpec::with_default_modulus(n).unwrap();
            for d1i in 1..1u64 << n {
                for d2i in 0..1u64 << n {
                    let d1 = FieldElement::from_index(n, d1i);
                    let d2 = FieldElement::from_index(n, d2i);
                    if let Ok(c) = CurveSpec::new(spec.clone(), d1.clone(), d2.clone()) {
                        let p = AffinePoint {
                            x: FieldElement::zero(n),
                            y: FieldElement::one(n),
                        };
                        assert_eq!(c.on_curve(&p), d1 == d2);
                    }
                }
            }
        }
    }

    #[test]
    fn group_axioms_exhaustive_n3() {
        let t = toy(3);
        let c = &t.curve;
        let points = c.enumerate_points().unwrap();
        let id = AffinePoint::identity(3);
        for p in &points {
            assert_eq!(&c.affine_add(p, &id).unwrap(), p);
            assert_eq!(&c.affine_add(&id, p).unwrap(), p);
            // inverse exists (exhaustive search)
            assert!(points.iter().any(|q| c.affine_add(p, q).unwrap().is_identity()));
        }
        for p in &points {
            for q in &points {
                let pq = c.affine_add(p, q).unwrap();
                assert!(c.on_curve(&pq), "sum left the curve");
                assert_eq!(pq, c.affine_add(q, p).unwrap());
                for r in &points {
                    let lhs = c.affine_add(&pq, r).unwrap();
                    let rhs = c.affine_add(p, &c.affine_add(q, r).unwrap()).unwrap();
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn hasse_bound_n3() {
        let t = toy(3);
        let count = t.curve.enumerate_points().unwrap().len() as f64;
        let slack = 2f64.powf(1.0 + 1.5) + 1.0;
        assert!((count - 8.0).abs() <= slack, "point count {count} violates the bound");
    }

    #[test]
    fn projective_add_matches_affine_exhaustively_n3() {
        let t = toy(3);
        let c = &t.curve;
        let points = c.enumerate_points().unwrap();
        for p in &points {
            for q in &points {
                let (sum, counts) = c.projective_add_counted(
                    &p.to_projective(3),
                    &q.to_projective(3),
                );
                assert_eq!(
                    counts,
                    FieldOpCounts { mul: 21, const_mul: 4, square: 1, add: 15 }
                );
                assert_eq!(c.to_affine(&sum), c.affine_add(p, q).unwrap());
            }
        }
    }

    #[test]
    fn projective_add_well_defined_under_scaling() {
        let t = toy(4);
        let c = &t.curve;
        let p = t.generator.to_projective(4);
        let q = c.scalar_mul(3, &t.generator).to_projective(4);
        let baseline = c.projective_add(&p, &q);
        for li in [2u64, 5, 9, 15] {
            let lambda = FieldElement::from_index(4, li);
            let scale = |pt: &ProjectivePoint| ProjectivePoint {
                x: c.field().mul_schoolbook(&pt.x, &lambda).unwrap(),
                y: c.field().mul_schoolbook(&pt.y, &lambda).unwrap(),
                z: c.field().mul_schoolbook(&pt.z, &lambda).unwrap(),
            };
            let scaled = c.projective_add(&scale(&p), &q);
            assert!(c.projectively_equal(&baseline, &scaled));
        }
    }

    #[test]
    fn projective_identity_addition() {
        let t = toy(3);
        let id = ProjectivePoint::identity(3);
        let sum = t.curve.projective_add(&id, &id);
        assert!(t.curve.projectively_equal(&sum, &id));
    }

    #[test]
    fn scalar_mul_oracle() {
        let t = toy(3);
        let c = &t.curve;
        let p = &t.generator;
        assert!(c.scalar_mul(0, p).is_identity());
        assert_eq!(&c.scalar_mul(1, p), p);
        assert!(c.scalar_mul(t.order, p).is_identity());
        assert!(!c.scalar_mul(t.order - 1, p).is_identity());
        // doubling consistency
        assert_eq!(c.scalar_mul(2, p), c.affine_add(p, p).unwrap());
        // order divides group size
        let size = c.enumerate_points().unwrap().len() as u64;
        assert_eq!(size % t.order, 0);
        assert_eq!(c.order_of(&AffinePoint::identity(3)), 1);
    }

    #[test]
    fn double_scalar_exhaustive_small() {
        let t = toy(3);
        let c = &t.curve;
        let p = &t.generator;
        let q = c.scalar_mul(3, p);
        assert!(c.double_scalar(0, 0, p, &q).is_identity());
        assert_eq!(&c.double_scalar(1, 0, p, &q), p);
        for k in 0..16 {
            for l in 0..16 {
                let direct = c.double_scalar(k, l, p, &q);
                let expect = c.scalar_mul((k + 3 * l) % t.order, p);
                assert_eq!(direct, expect, "k={k} l={l}");
            }
        }
    }

    #[test]
    fn curve_constructor_rejects_bad_parameters() {
        let spec = FieldSpec::with_default_modulus(3).unwrap();
        let zero = FieldElement::zero(3);
        let one = FieldElement::one(3);
        assert_eq!(
            CurveSpec::new(spec.clone(), zero.clone(), one.clone()).unwrap_err(),
            CurveError::ZeroD1
        );
        // Tr(0) = 0, so d2 = 0 must be rejected
        assert_eq!(
            CurveSpec::new(spec, one, zero).unwrap_err(),
            CurveError::BadTrace
        );
    }

    #[test]
    fn description_roundtrip() {
        let t = toy(3);
        let parsed = CurveSpec::parse_description(&t.curve.describe()).unwrap();
        assert_eq!(parsed, t.curve);
    }
}
