use std::fmt;
use std::sync::Arc;

use rand::RngCore;

use crate::dim::{Dim, DimMonoid};
use crate::error::{AlgebraError, Result};
use crate::rational::Q;

use super::DimRing;

pub type NormalForm<E> = Arc<dyn Fn(&E) -> E + Send + Sync>;

/// `R/I` for an ideal given by generators and a normal-form function that
/// picks a canonical representative of each coset. Elements are normal forms.
///
/// The normal form is validated on the ring's probes at construction; it is
/// not proven correct everywhere.
pub struct QuotientRing<R: DimRing> {
    base: R,
    generators: Vec<R::Elem>,
    nf: NormalForm<R::Elem>,
}

impl<R: DimRing> fmt::Debug for QuotientRing<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("QuotientRing").field("generators", &self.generators).finish_non_exhaustive()
    }
}

impl<R: DimRing + Clone> Clone for QuotientRing<R> {
    fn clone(&self) -> Self {
        QuotientRing { base: self.base.clone(), generators: self.generators.clone(), nf: self.nf.clone() }
    }
}

impl<R: DimRing> QuotientRing<R> {
    pub fn new(base: R, generators: Vec<R::Elem>, nf: impl Fn(&R::Elem) -> R::Elem + Send + Sync + 'static) -> Result<Self> {
        let q = QuotientRing { base, generators, nf: Arc::new(nf) };
        let probes = q.base.probes();
        q.validate(&probes)?;
        Ok(q)
    }

    /// Re-runs the consistency checks on extra elements of the base ring.
    pub fn validate(&self, probes: &[R::Elem]) -> Result<()> {
        let b = &self.base;
        let fail = |what: &str, x: &R::Elem, y: &R::Elem| {
            Err(AlgebraError::Invalid(format!(
                "normal form is inconsistent ({what}) at {}, {}",
                b.describe(x),
                b.describe(y)
            )))
        };
        for g in &self.generators {
            if !b.is_zero(&self.project(g)) {
                return fail("generator not in ideal", g, g);
            }
            for x in probes {
                if !b.is_zero(&self.project(&b.mul(x, g))) || !b.is_zero(&self.project(&b.mul(g, x))) {
                    return fail("ideal law", x, g);
                }
            }
        }
        for x in probes {
            let nx = self.project(x);
            if b.dim(&nx) != b.dim(x) || self.project(&nx) != nx {
                return fail("not an idempotent slice map", x, x);
            }
            for y in probes {
                let ny = self.project(y);
                if b.dim(x) == b.dim(y) {
                    let lhs = b.add(x, y).map(|s| self.project(&s));
                    let rhs = b.add(&nx, &ny).map(|s| self.project(&s));
                    if lhs.is_err() || lhs.ok() != rhs.ok() {
                        return fail("q(a+b) != q(a)+q(b)", x, y);
                    }
                }
                if self.project(&b.mul(x, y)) != self.project(&b.mul(&nx, &ny)) {
                    return fail("q(ab) != q(a)q(b)", x, y);
                }
            }
        }
        Ok(())
    }

    /// The projection `q: R → R/I`.
    pub fn project(&self, a: &R::Elem) -> R::Elem {
        (self.nf)(a)
    }

    pub fn base(&self) -> &R {
        &self.base
    }

    pub fn generators(&self) -> &[R::Elem] {
        &self.generators
    }
}

impl<R: DimRing> DimRing for QuotientRing<R> {
    type Elem = R::Elem;

    fn monoid(&self) -> &DimMonoid {
        self.base.monoid()
    }

    fn dim(&self, a: &R::Elem) -> Dim {
        self.base.dim(a)
    }

    fn add(&self, a: &R::Elem, b: &R::Elem) -> Result<R::Elem> {
        self.base.add(a, b).map(|s| self.project(&s))
    }

    fn neg(&self, a: &R::Elem) -> R::Elem {
        self.project(&self.base.neg(a))
    }

    fn zero(&self, d: &Dim) -> Result<R::Elem> {
        self.base.zero(d).map(|z| self.project(&z))
    }

    fn one(&self) -> R::Elem {
        self.project(&self.base.one())
    }

    fn mul(&self, a: &R::Elem, b: &R::Elem) -> R::Elem {
        self.project(&self.base.mul(a, b))
    }

    fn is_commutative(&self) -> bool {
        self.base.is_commutative()
    }

    fn probes(&self) -> Vec<R::Elem> {
        let mut out: Vec<R::Elem> = Vec::new();
        for p in self.base.probes() {
            let q = self.project(&p);
            if !out.contains(&q) {
                out.push(q);
            }
        }
        out
    }

    fn sample(&self, rng: &mut dyn RngCore) -> R::Elem {
        self.project(&self.base.sample(rng))
    }

    fn sample_in(&self, d: &Dim, rng: &mut dyn RngCore) -> Result<R::Elem> {
        self.base.sample_in(d, rng).map(|x| self.project(&x))
    }

    fn elements(&self) -> Option<Vec<R::Elem>> {
        let mut out: Vec<R::Elem> = Vec::new();
        for p in self.base.elements()? {
            let q = self.project(&p);
            if !out.contains(&q) {
                out.push(q);
            }
        }
        Some(out)
    }

    fn describe(&self, a: &R::Elem) -> String {
        self.base.describe(a)
    }

    fn scalar(&self, r: &Q) -> Option<R::Elem> {
        self.base.scalar(r).map(|s| self.project(&s))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dim::Dimensioned;
    use crate::rational::int;
    use crate::ring::table::tests::{f3_over_z2, zm_over_z2};
    use crate::ring::{morphism_report, ring_axiom_report, DimensionlessRing, Plan, ProductRing};

    #[test]
    fn trivial_ideals() {
        let r = ProductRing::new(DimMonoid::free(1));
        let zero_ideal = QuotientRing::new(r.clone(), vec![], |a| a.clone()).unwrap();
        for p in r.probes() {
            assert_eq!(zero_ideal.project(&p), p);
        }
        let whole = QuotientRing::new(r.clone(), vec![r.one()], |a: &crate::ring::Scalar| {
            Dimensioned::new(int(0), a.dim.clone())
        })
        .unwrap();
        assert_eq!(whole.probes().len(), r.monoid().probe_elements(1).len());
        assert!(whole.is_zero(&whole.one()));
    }

    #[test]
    fn inconsistent_normal_form_is_rejected() {
        let r = ProductRing::new(DimMonoid::free(1));
        // Rounding toward zero is not additive.
        let bad = QuotientRing::new(r, vec![], |a: &crate::ring::Scalar| {
            Dimensioned::new(Q::from_integer(a.value.to_integer()), a.dim.clone())
        });
        assert!(bad.is_err());
    }

    #[test]
    fn quotient_of_finite_ring() {
        // Z/4 x Z/2 modulo the ideal generated by 2@0, which is 2Z/4 in
        // both slices. Oracle normal form: reduce the coordinate mod 2.
        let r = zm_over_z2(4);
        let gens = vec![r.index("2@0").unwrap()];
        let nf = |a: &usize| (a / 4) * 4 + (a % 4) % 2;
        let q = QuotientRing::new(r.clone(), gens, nf).unwrap();
        let rep = ring_axiom_report(&q, "quotient", &Plan::Exhaustive.instances(&q));
        assert!(rep.all_passed(), "{rep}");
        let all = r.elements().unwrap();
        let proj = morphism_report(&r, &q, |a| Some(q.project(a)), |d| d.clone(), &all, "q");
        assert!(proj.all_passed(), "{proj}");
        assert_eq!(q.elements().unwrap().len(), 4);
        // (R/I)_1 against R_1 / I_1 computed directly: Z/4 modulo {0, 2}.
        let q1 = DimensionlessRing::new(&q);
        let lhs: Vec<usize> = q.elements().unwrap().into_iter().filter(|a| q1.contains(a)).collect();
        let mut cosets: Vec<Vec<usize>> = Vec::new();
        for a in 0..4usize {
            let coset = vec![a % 2, a % 2 + 2];
            if !cosets.contains(&coset) {
                cosets.push(coset);
            }
        }
        assert_eq!(lhs.len(), cosets.len());
        for (x, c) in lhs.iter().zip(&cosets) {
            assert!(c.contains(x));
        }
    }

    #[test]
    fn non_ideal_is_rejected() {
        // R_1 is not an ideal of F3 x Z/2 since 1@1 * 1@1 = 1@0.
        let r = f3_over_z2();
        let gens = r.slice(&Dim::scalar(1));
        let z = r.index("0@1").unwrap();
        let nf = move |a: &usize| if *a >= 3 { z } else { *a };
        assert!(QuotientRing::new(r, gens, nf).is_err());
    }
}
