//! Polynomial gambles on the outcome simplex stored in Bernstein
//! coordinates, the coefficient-identity and multinomial maps, degree
//! elevation, and the Bernstein cone orders.

use std::sync::Arc;

use num_traits::Zero;

use crate::counts::{self, CountGamble, CountSpace, CountVector};
use crate::gamble::{Gamble, OutcomeSpace};
use crate::rational::{self, int, Rational};
use crate::{Error, Result};

/// Default number of extra elevation steps tried by the global cone search.
pub const DEFAULT_ELEVATION_CAP_MARGIN: usize = 20;

/// A point of the simplex: non-negative rational coordinates summing to 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplexPoint {
    base: Arc<OutcomeSpace>,
    coords: Vec<Rational>,
}

impl SimplexPoint {
    pub fn new(base: Arc<OutcomeSpace>, coords: Vec<Rational>) -> Result<Self> {
        if coords.len() != base.size() {
            return Err(Error::DimensionMismatch(format!(
                "{} coordinates for {} outcomes",
                coords.len(),
                base.size()
            )));
        }
        if coords.iter().any(|c| c < &Rational::zero()) {
            return Err(Error::BadInput("simplex coordinates must be >= 0".into()));
        }
        let sum: Rational = coords.iter().sum();
        if sum != rational::one() {
            return Err(Error::BadInput("simplex coordinates must sum to 1".into()));
        }
        Ok(SimplexPoint { base, coords })
    }

    pub fn base(&self) -> &Arc<OutcomeSpace> {
        &self.base
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }
}

/// A polynomial gamble on the simplex in degree-`n` Bernstein coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BernsteinPoly {
    coeff_space: CountSpace,
    coefficients: Vec<Rational>,
}

impl BernsteinPoly {
    pub fn new(base: Arc<OutcomeSpace>, degree: usize, coefficients: Vec<Rational>) -> Result<Self> {
        let coeff_space = CountSpace::new(base, degree);
        if coefficients.len() != coeff_space.size() {
            return Err(Error::ValueCount {
                expected: coeff_space.size(),
                got: coefficients.len(),
            });
        }
        Ok(BernsteinPoly {
            coeff_space,
            coefficients,
        })
    }

    pub fn constant(base: Arc<OutcomeSpace>, degree: usize, c: Rational) -> Self {
        let coeff_space = CountSpace::new(base, degree);
        let n = coeff_space.size();
        BernsteinPoly {
            coeff_space,
            coefficients: vec![c; n],
        }
    }

    pub fn base(&self) -> &Arc<OutcomeSpace> {
        self.coeff_space.base()
    }

    pub fn degree(&self) -> usize {
        self.coeff_space.total()
    }

    pub fn coeff_space(&self) -> &CountSpace {
        &self.coeff_space
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.coefficients
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.iter().all(|c| c.is_zero())
    }

    pub fn sub(&self, other: &BernsteinPoly) -> Result<BernsteinPoly> {
        if self.coeff_space != other.coeff_space {
            return Err(Error::SpaceMismatch(
                self.coeff_space.describe(),
                other.coeff_space.describe(),
            ));
        }
        Ok(BernsteinPoly {
            coeff_space: self.coeff_space.clone(),
            coefficients: self
                .coefficients
                .iter()
                .zip(&other.coefficients)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }
}

/// The Bernstein basis polynomial `B_m(θ) = (n choose m) prod_x θ_x^{m_x}`.
pub fn bernstein_eval(m: &CountVector, theta: &SimplexPoint) -> Result<Rational> {
    if m.counts().len() != theta.base().size() {
        return Err(Error::DimensionMismatch(format!(
            "count vector {m} vs {} simplex coordinates",
            theta.base().size()
        )));
    }
    let mut prod = int(counts::atom_size(m) as i64);
    for (c, t) in m.counts().iter().zip(theta.coords()) {
        prod *= rational::pow(t, *c);
    }
    Ok(prod)
}

/// `p(θ) = Σ_m coeff(m) B_m(θ)`.
pub fn poly_eval(p: &BernsteinPoly, theta: &SimplexPoint) -> Result<Rational> {
    if p.base() != theta.base() {
        return Err(Error::DimensionMismatch(
            "polynomial and point on different outcome spaces".into(),
        ));
    }
    let mut sum = Rational::zero();
    for (m, c) in p.coeff_space.vectors().iter().zip(&p.coefficients) {
        if !c.is_zero() {
            sum += c * bernstein_eval(m, theta)?;
        }
    }
    Ok(sum)
}

/// The coefficient identity: a count gamble's values become the Bernstein
/// coordinates of a degree-`N` polynomial.
pub fn comn_map(g: &CountGamble) -> BernsteinPoly {
    BernsteinPoly {
        coeff_space: g.space().clone(),
        coefficients: g.values().to_vec(),
    }
}

/// Inverse of `comn_map`.
pub fn comn_inverse(p: &BernsteinPoly) -> CountGamble {
    CountGamble::new(p.coeff_space.clone(), p.coefficients.clone()).unwrap()
}

/// The multinomial map: the expectation polynomial of `f` in the sample
/// size `N` and chance vector `θ`.
pub fn mn_map(f: &Gamble) -> Result<BernsteinPoly> {
    Ok(comn_map(&counts::hy_map(f)?))
}

/// `Mn(f)(θ)` evaluated at one point.
pub fn mn_expectation(f: &Gamble, theta: &SimplexPoint) -> Result<Rational> {
    poly_eval(&mn_map(f)?, theta)
}

/// One elevation step: a degree-`n` polynomial re-expressed at degree
/// `n + 1` via `B^n_m = Σ_x ((m_x + 1) / (n + 1)) B^{n+1}_{m + e_x}`.
fn elevate_once(p: &BernsteinPoly) -> BernsteinPoly {
    let n = p.degree();
    let base = p.base().clone();
    let target_space = CountSpace::new(base, n + 1);
    let denom = int((n + 1) as i64);
    let mut coefficients = vec![Rational::zero(); target_space.size()];
    for (slot, mp) in target_space.vectors().iter().enumerate() {
        let mut acc = Rational::zero();
        for x in 0..mp.counts().len() {
            if mp.counts()[x] == 0 {
                continue;
            }
            let mut lower = mp.counts().to_vec();
            lower[x] -= 1;
            let idx = p
                .coeff_space
                .index_of(&CountVector::new(lower))
                .expect("lowered count vector is enumerated");
            acc += &p.coefficients[idx] * int(mp.counts()[x] as i64) / &denom;
        }
        coefficients[slot] = acc;
    }
    BernsteinPoly {
        coeff_space: target_space,
        coefficients,
    }
}

/// Re-expresses `p` at the higher degree `target`; pointwise equal on the
/// simplex.
pub fn degree_elevate(p: &BernsteinPoly, target: usize) -> Result<BernsteinPoly> {
    if target < p.degree() {
        return Err(Error::DegreeTooSmall {
            degree: p.degree(),
            target,
        });
    }
    let mut q = p.clone();
    while q.degree() < target {
        q = elevate_once(&q);
    }
    Ok(q)
}

/// The fixed-degree cone order: `p <= q` at degree `n` iff every Bernstein
/// coefficient of `q - p`, both elevated to degree `n`, is non-negative.
pub fn bernstein_leq_at_degree(p: &BernsteinPoly, q: &BernsteinPoly, n: usize) -> Result<bool> {
    if n < p.degree() || n < q.degree() {
        return Err(Error::ComparisonDegreeTooSmall(n));
    }
    let pe = degree_elevate(p, n)?;
    let qe = degree_elevate(q, n)?;
    Ok(qe
        .sub(&pe)?
        .coefficients
        .iter()
        .all(|c| c >= &Rational::zero()))
}

/// Strict companion of the fixed-degree order: `p <= q` at `n` and the two
/// differ as polynomials.
pub fn bernstein_strictly_below_at_degree(
    p: &BernsteinPoly,
    q: &BernsteinPoly,
    n: usize,
) -> Result<bool> {
    Ok(bernstein_leq_at_degree(p, q, n)? && !degree_elevate(p, n)?.sub(&degree_elevate(q, n)?)?.is_zero())
}

/// Verdict of the bounded search for a global-cone certificate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GlobalOrder {
    /// Coefficientwise dominance certified at this (smallest found) degree.
    Yes { at_degree: usize },
    /// No certificate up to the cap.  Not a disproof.
    Undetermined,
}

/// Searches degrees from `max(deg p, deg q)` up to `cap` for a
/// coefficientwise certificate of `p <= q` in the all-degrees Bernstein
/// cone.  Sound but incomplete: `Undetermined` never disproves membership.
pub fn bernstein_leq_global(p: &BernsteinPoly, q: &BernsteinPoly, cap: usize) -> Result<GlobalOrder> {
    let start = p.degree().max(q.degree());
    if cap < start {
        return Err(Error::ComparisonDegreeTooSmall(cap));
    }
    let mut pe = degree_elevate(p, start)?;
    let mut qe = degree_elevate(q, start)?;
    for n in start..=cap {
        if bernstein_leq_at_degree(&pe, &qe, n)? {
            return Ok(GlobalOrder::Yes { at_degree: n });
        }
        if n < cap {
            pe = elevate_once(&pe);
            qe = elevate_once(&qe);
        }
    }
    Ok(GlobalOrder::Undetermined)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gamble::{Sequence, SequenceSpace};
    use crate::rational::ratio;

    fn ab() -> Arc<OutcomeSpace> {
        OutcomeSpace::new(["a", "b"]).unwrap()
    }

    fn theta(base: &Arc<OutcomeSpace>, coords: &[(i64, i64)]) -> SimplexPoint {
        SimplexPoint::new(
            base.clone(),
            coords.iter().map(|&(n, d)| ratio(n, d)).collect(),
        )
        .unwrap()
    }

    #[test]
    fn simplex_point_validation() {
        let base = ab();
        assert!(SimplexPoint::new(base.clone(), vec![ratio(1, 2), ratio(1, 3)]).is_err());
        assert!(SimplexPoint::new(base.clone(), vec![ratio(3, 2), ratio(-1, 2)]).is_err());
        assert!(SimplexPoint::new(base, vec![ratio(1, 2), ratio(1, 2)]).is_ok());
    }

    #[test]
    fn basis_polynomial_values() {
        let base = ab();
        let t = theta(&base, &[(1, 2), (1, 2)]);
        assert_eq!(
            bernstein_eval(&CountVector::new(vec![1, 1]), &t).unwrap(),
            ratio(1, 2)
        );
        let vertex = theta(&base, &[(1, 1), (0, 1)]);
        assert_eq!(
            bernstein_eval(&CountVector::new(vec![3, 0]), &vertex).unwrap(),
            ratio(1, 1)
        );
    }

    #[test]
    fn partition_of_unity() {
        let base = OutcomeSpace::new(["a", "b", "c"]).unwrap();
        let t = theta(&base, &[(1, 6), (1, 3), (1, 2)]);
        for n in 1..=4 {
            let cs = CountSpace::new(base.clone(), n);
            let sum: Rational = cs
                .vectors()
                .iter()
                .map(|m| bernstein_eval(m, &t).unwrap())
                .sum();
            assert_eq!(sum, ratio(1, 1));
        }
    }

    #[test]
    fn poly_eval_examples() {
        let base = ab();
        let c = BernsteinPoly::constant(base.clone(), 3, ratio(-5, 7));
        let t = theta(&base, &[(2, 5), (3, 5)]);
        assert_eq!(poly_eval(&c, &t).unwrap(), ratio(-5, 7));
        // theta_a^2 = B_{(2,0)} at degree 2; value 1/9 at theta_a = 1/3.
        let p = BernsteinPoly::new(
            base.clone(),
            2,
            vec![ratio(1, 1), ratio(0, 1), ratio(0, 1)],
        )
        .unwrap();
        assert_eq!(
            poly_eval(&p, &theta(&base, &[(1, 3), (2, 3)])).unwrap(),
            ratio(1, 9)
        );
        let z = BernsteinPoly::constant(base, 2, ratio(0, 1));
        assert_eq!(poly_eval(&z, &t).unwrap(), ratio(0, 1));
    }

    #[test]
    fn comn_round_trip() {
        let cs = CountSpace::new(ab(), 2);
        let g = CountGamble::new(cs, vec![ratio(1, 1), ratio(0, 1), ratio(0, 1)]).unwrap();
        let p = comn_map(&g);
        assert_eq!(p.degree(), 2);
        assert_eq!(comn_inverse(&p), g);
    }

    #[test]
    fn mn_map_examples() {
        let base = ab();
        let space = SequenceSpace::new(base.clone(), 2).unwrap();
        let f = Gamble::indicator(space.clone(), &Sequence::new(vec![0, 1])).unwrap();
        let p = mn_map(&f).unwrap();
        // theta_a theta_b = (1/2) B_{(1,1)}.
        assert_eq!(
            p.coefficients(),
            &[ratio(0, 1), ratio(1, 2), ratio(0, 1)]
        );
        let g = Gamble::indicator(space.clone(), &Sequence::new(vec![1, 0])).unwrap();
        assert_eq!(mn_map(&g).unwrap(), p);
        let c = Gamble::constant(space, ratio(4, 3));
        assert_eq!(
            mn_map(&c).unwrap(),
            BernsteinPoly::constant(base, 2, ratio(4, 3))
        );
    }

    #[test]
    fn elevation_single_step_identity() {
        let base = ab();
        // B_{(1,1)} at degree 2 -> (2/3) B_{(2,1)} + (2/3) B_{(1,2)}.
        let p = BernsteinPoly::new(
            base.clone(),
            2,
            vec![ratio(0, 1), ratio(1, 1), ratio(0, 1)],
        )
        .unwrap();
        let q = degree_elevate(&p, 3).unwrap();
        assert_eq!(
            q.coefficients(),
            &[ratio(0, 1), ratio(2, 3), ratio(2, 3), ratio(0, 1)]
        );
        for (num, den) in [(0i64, 1i64), (1, 1), (1, 2), (1, 3), (2, 7)] {
            let t = theta(&base, &[(num, den), (den - num, den)]);
            assert_eq!(poly_eval(&p, &t).unwrap(), poly_eval(&q, &t).unwrap());
        }
        assert_eq!(degree_elevate(&p, 2).unwrap(), p);
        assert!(degree_elevate(&q, 2).is_err());
    }

    #[test]
    fn elevation_preserves_constants() {
        let base = ab();
        let one = BernsteinPoly::constant(base.clone(), 1, ratio(1, 1));
        for n in 1..=5 {
            assert_eq!(
                degree_elevate(&one, n).unwrap(),
                BernsteinPoly::constant(base.clone(), n, ratio(1, 1))
            );
        }
    }

    #[test]
    fn fixed_degree_order() {
        let base = ab();
        let zero = BernsteinPoly::constant(base.clone(), 2, ratio(0, 1));
        let b11 = BernsteinPoly::new(
            base.clone(),
            2,
            vec![ratio(0, 1), ratio(1, 1), ratio(0, 1)],
        )
        .unwrap();
        assert!(bernstein_leq_at_degree(&zero, &b11, 2).unwrap());
        assert!(bernstein_strictly_below_at_degree(&zero, &b11, 2).unwrap());
        let wiggly = BernsteinPoly::new(
            base.clone(),
            2,
            vec![ratio(1, 1), ratio(-1, 1), ratio(1, 1)],
        )
        .unwrap();
        assert!(!bernstein_leq_at_degree(&zero, &wiggly, 2).unwrap());
        assert!(bernstein_leq_at_degree(&wiggly, &wiggly, 2).unwrap());
        assert!(!bernstein_strictly_below_at_degree(&wiggly, &wiggly, 2).unwrap());
    }

    #[test]
    fn global_order_certificate_search() {
        let base = ab();
        let zero = BernsteinPoly::constant(base.clone(), 2, ratio(0, 1));
        // theta_a^2 - theta_a theta_b + theta_b^2: degree-2 coordinates
        // (1, -1/2, 1); strictly positive on the simplex, certified after
        // one elevation (it equals theta_a^3 + theta_b^3 there).
        let q = BernsteinPoly::new(
            base.clone(),
            2,
            vec![ratio(1, 1), ratio(-1, 2), ratio(1, 1)],
        )
        .unwrap();
        assert_eq!(
            bernstein_leq_global(&zero, &q, 22).unwrap(),
            GlobalOrder::Yes { at_degree: 3 }
        );
        // Already-dominant pairs certify at their own degree.
        let b11 = BernsteinPoly::new(
            base.clone(),
            2,
            vec![ratio(0, 1), ratio(1, 1), ratio(0, 1)],
        )
        .unwrap();
        assert_eq!(
            bernstein_leq_global(&zero, &b11, 10).unwrap(),
            GlobalOrder::Yes { at_degree: 2 }
        );
        // theta_a theta_b - theta_a^2 is -1 at the vertex (1, 0); no
        // certificate can exist at any degree.
        let neg = BernsteinPoly::new(
            base.clone(),
            2,
            vec![ratio(-1, 1), ratio(1, 2), ratio(0, 1)],
        )
        .unwrap();
        assert_eq!(
            poly_eval(&neg, &theta(&base, &[(1, 1), (0, 1)])).unwrap(),
            ratio(-1, 1)
        );
        assert_eq!(
            bernstein_leq_global(&zero, &neg, 20).unwrap(),
            GlobalOrder::Undetermined
        );
    }

    #[test]
    fn bernstein_basis_is_independent() {
        let cs = CountSpace::new(ab(), 3);
        // Evaluate each basis polynomial at coeff-space many generic points
        // and check exact linear independence of the value columns.
        let base = cs.base().clone();
        let pts: Vec<SimplexPoint> = (1..=cs.size() as i64)
            .map(|k| theta(&base, &[(k, cs.size() as i64 + 1), (cs.size() as i64 + 1 - k, cs.size() as i64 + 1)]))
            .collect();
        let cols: Vec<Vec<Rational>> = cs
            .vectors()
            .iter()
            .map(|m| {
                pts.iter()
                    .map(|t| bernstein_eval(m, t).unwrap())
                    .collect()
            })
            .collect();
        assert!(crate::linalg::independent(&cols));
    }
}
