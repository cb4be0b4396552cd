//! Quadratic penalty families ψ_u(x) = c_u (x − a_u)² / 2 and their conjugates.

use num::{BigInt, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::rational::{int, Rat};

/// Parameters are kept as exact rationals; denominators beyond this make the
/// scaled capacities blow up, so constructors reject them.
pub const DENOMINATOR_LIMIT_LOG2: u32 = 20;

fn denom_ok(r: &Rat) -> bool {
    r.denom().abs() <= BigInt::from(1u64 << DENOMINATOR_LIMIT_LOG2)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadraticPenalty {
    a: Rat,
    c: Rat,
}

impl QuadraticPenalty {
    pub fn new(a: Rat, c: Rat) -> Result<Self> {
        if c <= Rat::zero() {
            return Err(Error::InvalidPenalty(format!(
                "curvature must be positive, got {c}"
            )));
        }
        if !denom_ok(&a) || !denom_ok(&c) {
            return Err(Error::InvalidPenalty(format!(
                "denominator above 2^{DENOMINATOR_LIMIT_LOG2} in ({a}, {c})"
            )));
        }
        Ok(Self { a, c })
    }

    /// Internal shift ψ(x) + y·x; keeps curvature, moves the center. The shifted
    /// center can have a large denominator, so this skips validation on purpose.
    pub(crate) fn shifted_by_linear(&self, y: &Rat) -> Self {
        Self {
            a: &self.a - y / &self.c,
            c: self.c.clone(),
        }
    }

    pub fn center(&self) -> &Rat {
        &self.a
    }

    pub fn curvature(&self) -> &Rat {
        &self.c
    }

    pub fn value(&self, t: &Rat) -> Rat {
        let d = t - &self.a;
        &self.c * &d * &d / int(2)
    }

    /// ψ'(t) = c(t − a)
    pub fn deriv(&self, t: &Rat) -> Rat {
        &self.c * (t - &self.a)
    }

    /// ψ*(z) = z²/(2c) + a·z
    pub fn conj(&self, z: &Rat) -> Rat {
        z * z / (int(2) * &self.c) + &self.a * z
    }

    /// (ψ*)'(z) = z/c + a
    pub fn conj_deriv(&self, z: &Rat) -> Rat {
        z / &self.c + &self.a
    }
}

/// One penalty per ground-set element, id order.
#[derive(Debug, Clone)]
pub struct PenaltyFamily {
    items: Vec<QuadraticPenalty>,
}

impl PenaltyFamily {
    pub fn make_quadratic(a: &[Rat], c: &[Rat]) -> Result<Self> {
        if a.len() != c.len() {
            return Err(Error::InvalidPenalty(format!(
                "got {} centers but {} curvatures",
                a.len(),
                c.len()
            )));
        }
        if a.is_empty() {
            return Err(Error::InvalidPenalty("empty family".into()));
        }
        let items = a
            .iter()
            .zip(c)
            .map(|(a, c)| QuadraticPenalty::new(a.clone(), c.clone()))
            .collect::<Result<_>>()?;
        Ok(Self { items })
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// 1-based, matching ground-set element ids.
    pub fn by_id(&self, u: usize) -> &QuadraticPenalty {
        &self.items[u - 1]
    }

    pub fn iter(&self) -> impl Iterator<Item = &QuadraticPenalty> {
        self.items.iter()
    }

    /// σ = min_u c_u
    pub fn sigma(&self) -> Rat {
        self.items.iter().map(|p| p.c.clone()).min().unwrap()
    }

    /// L = max_u c_u
    pub fn l_max(&self) -> Rat {
        self.items.iter().map(|p| p.c.clone()).max().unwrap()
    }

    /// ρ = max_u |ψ'_u(0)| = max_u |c_u a_u|
    pub fn rho(&self) -> Rat {
        self.items
            .iter()
            .map(|p| (&p.c * &p.a).abs())
            .max()
            .unwrap()
    }

    pub fn shifted_by_linear(&self, y: &[Rat]) -> Self {
        assert_eq!(y.len(), self.items.len());
        Self {
            items: self
                .items
                .iter()
                .zip(y)
                .map(|(p, yu)| p.shifted_by_linear(yu))
                .collect(),
        }
    }

    /// (ψ'_u(α))_u — the linear term of the parametric objective at α.
    pub fn deriv_at(&self, alpha: &Rat) -> Vec<Rat> {
        self.items.iter().map(|p| p.deriv(alpha)).collect()
    }

    /// Σ_u ψ_u(x_u)
    pub fn value_sum(&self, x: &[Rat]) -> Rat {
        assert_eq!(x.len(), self.items.len());
        self.items.iter().zip(x).map(|(p, xu)| p.value(xu)).sum()
    }

    /// Σ_u ψ*_u(−y_u) — the dual objective.
    pub fn conj_sum_neg(&self, y: &[Rat]) -> Rat {
        assert_eq!(y.len(), self.items.len());
        self.items.iter().zip(y).map(|(p, yu)| p.conj(&-yu)).sum()
    }

    /// (∇ψ*)(−y): the primal point a dual vector maps to.
    pub fn grad_conj_neg(&self, y: &[Rat]) -> Vec<Rat> {
        assert_eq!(y.len(), self.items.len());
        self.items
            .iter()
            .zip(y)
            .map(|(p, yu)| p.conj_deriv(&-yu))
            .collect()
    }

    /// Samples random points and returns the largest deviation in the
    /// Fenchel–Young identity ψ(t) + ψ*(ψ'(t)) = t·ψ'(t) and the inversion
    /// (ψ*)'(ψ'(t)) = t. All arithmetic is exact, so anything nonzero is a bug.
    pub fn conjugate_pair_check(&self, samples: usize, seed: u64) -> Rat {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut worst = Rat::zero();
        for _ in 0..samples {
            let t = Rat::from_float(rng.random_range(-100.0..100.0)).unwrap();
            for p in &self.items {
                let z = p.deriv(&t);
                let fy = (p.value(&t) + p.conj(&z) - &t * &z).abs();
                let inv = (p.conj_deriv(&z) - &t).abs();
                worst = worst.max(fy).max(inv);
            }
        }
        worst
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn rejects_bad_parameters() {
        assert!(QuadraticPenalty::new(int(0), int(0)).is_err());
        assert!(QuadraticPenalty::new(int(0), int(-1)).is_err());
        let huge = rat(1, (1i64 << 20) + 1);
        assert!(QuadraticPenalty::new(huge.clone(), int(1)).is_err());
        assert!(QuadraticPenalty::new(int(0), huge + int(1)).is_err());
        // boundary denominator is fine
        assert!(QuadraticPenalty::new(rat(1, 1 << 20), int(1)).is_ok());
    }

    #[test]
    fn conjugate_values() {
        let p = QuadraticPenalty::new(int(2), int(1)).unwrap();
        assert_eq!(p.conj_deriv(&int(-1)), int(1));
        assert_eq!(p.conj(&int(-1)), rat(-3, 2));
        assert_eq!(p.value(&int(3)), rat(1, 2));
        assert_eq!(p.deriv(&int(3)), int(1));

        let q = QuadraticPenalty::new(int(0), int(2)).unwrap();
        assert_eq!(q.value(&int(3)), int(9));
        assert_eq!(q.conj(&int(2)), int(1));
        assert_eq!(q.conj_deriv(&int(4)), int(2));
    }

    #[test]
    fn shift_moves_center() {
        let p = QuadraticPenalty::new(int(2), int(1)).unwrap();
        let s = p.shifted_by_linear(&int(1));
        assert_eq!(s.center(), &int(1));
        assert_eq!(s.curvature(), &int(1));
        // ψ(x) + y·x and the shifted penalty differ by a constant: same derivative
        assert_eq!(s.deriv(&int(5)), p.deriv(&int(5)) + int(1));

        let q = QuadraticPenalty::new(int(-1), int(2)).unwrap();
        assert_eq!(q.shifted_by_linear(&int(3)).center(), &rat(-5, 2));
    }

    #[test]
    fn family_constants() {
        let pen = PenaltyFamily::make_quadratic(&[int(2), int(-3)], &[int(1), int(2)]).unwrap();
        assert_eq!(pen.sigma(), int(1));
        assert_eq!(pen.l_max(), int(2));
        assert_eq!(pen.rho(), int(6));
        assert_eq!(pen.deriv_at(&rat(1, 2)), vec![rat(-3, 2), int(7)]);
        assert_eq!(pen.conj_sum_neg(&[int(0), int(0)]), int(0));
        assert_eq!(pen.grad_conj_neg(&[int(0), int(0)]), vec![int(2), int(-3)]);
        assert_eq!(pen.value_sum(&[int(0), int(0)]), int(2) + int(9));
    }

    #[test]
    fn fenchel_young_is_exact() {
        let pen = PenaltyFamily::make_quadratic(
            &[rat(7, 3), int(-4), rat(-1, 5)],
            &[int(1), int(2), rat(3, 2)],
        )
        .unwrap();
        assert_eq!(pen.conjugate_pair_check(50, 17), int(0));
    }

    #[test]
    fn length_mismatch_rejected() {
        assert!(PenaltyFamily::make_quadratic(&[int(0)], &[int(1), int(1)]).is_err());
        assert!(PenaltyFamily::make_quadratic(&[], &[]).is_err());
    }
}
