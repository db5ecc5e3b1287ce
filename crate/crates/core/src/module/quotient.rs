use std::fmt;
use std::sync::Arc;

use num_traits::Zero;
use rand::RngCore;

use crate::dim::{Dim, Dimensioned};
use crate::error::{AlgebraError, Result};
use crate::linalg::EchelonBasis;
use crate::report::{LawCheck, Report};
use crate::ring::{DimRing, ProductRing, QuotientRing};

use super::{DimModule, FreeDimModule, GPoint, ModElem};

type ModNormalForm<E> = Arc<dyn Fn(&ModElem<E>) -> ModElem<E> + Send + Sync>;

/// A submodule `S ⊂ A` given by generators and a normal form picking one
/// representative per coset of `S`. Checked on probes, not proven.
pub struct Submodule<R: DimRing> {
    generators: Vec<ModElem<R::Elem>>,
    nf: ModNormalForm<R::Elem>,
}

impl<R: DimRing> Clone for Submodule<R> {
    fn clone(&self) -> Self {
        Submodule { generators: self.generators.clone(), nf: self.nf.clone() }
    }
}

impl<R: DimRing> fmt::Debug for Submodule<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Submodule").field("generators", &self.generators).finish_non_exhaustive()
    }
}

impl<R: DimRing> Submodule<R> {
    pub fn new(
        module: &FreeDimModule<R>,
        generators: Vec<ModElem<R::Elem>>,
        nf: impl Fn(&ModElem<R::Elem>) -> ModElem<R::Elem> + Send + Sync + 'static,
    ) -> Result<Self> {
        let s = Submodule { generators, nf: Arc::new(nf) };
        s.validate(module)?;
        Ok(s)
    }

    fn validate(&self, m: &FreeDimModule<R>) -> Result<()> {
        let ring = m.ring();
        let show = |a: &ModElem<R::Elem>| m.describe(a);
        let fail = |what: &str, w: String| Err(AlgebraError::Invalid(format!("submodule normal form fails ({what}) at {w}")));
        let scalars = ring.probes();
        for g in &self.generators {
            m.check(g)?;
            for r in &scalars {
                if !self.contains(&m.act(r, g)) {
                    return fail("closed under the action", format!("r={}, g={}", ring.describe(r), show(g)));
                }
            }
        }
        let probes = m.probes();
        for a in &probes {
            let na = self.reduce(a);
            if na.dim != a.dim || m.check(&na).is_err() || self.reduce(&na) != na {
                return fail("idempotent slice map", show(a));
            }
            for r in &scalars {
                if self.reduce(&m.act(r, a)) != self.reduce(&m.act(r, &na)) {
                    return fail("N(ra) = N(r N(a))", format!("r={}, a={}", ring.describe(r), show(a)));
                }
            }
            for b in probes.iter().filter(|b| b.dim == a.dim) {
                let lhs = m.add(a, b).map(|s| self.reduce(&s))?;
                let rhs = m.add(&na, &self.reduce(b)).map(|s| self.reduce(&s))?;
                if lhs != rhs {
                    return fail("additive", format!("{}, {}", show(a), show(b)));
                }
            }
        }
        Ok(())
    }

    /// The canonical representative of `a + S`.
    pub fn reduce(&self, a: &ModElem<R::Elem>) -> ModElem<R::Elem> {
        (self.nf)(a)
    }

    pub fn contains(&self, a: &ModElem<R::Elem>) -> bool {
        self.reduce(a).coeffs.is_empty()
    }

    pub fn generators(&self) -> &[ModElem<R::Elem>] {
        &self.generators
    }
}

impl<R> Submodule<R>
where
    R: DimRing + Clone + Send + Sync + 'static,
    R::Elem: Send + Sync,
{
    /// `S = I·A + R·{e_k : k killed}`: drops the killed coordinates and
    /// reduces the rest modulo the ideal.
    pub fn monomial(module: &FreeDimModule<R>, ideal: &QuotientRing<R>, killed: &[usize]) -> Result<Self> {
        let mut generators: Vec<_> = killed.iter().map(|&k| module.basis_elem(k)).collect();
        for i in ideal.generators() {
            for k in 0..module.rank() {
                let g = module.act(i, &module.basis_elem(k));
                if !g.coeffs.is_empty() {
                    generators.push(g);
                }
            }
        }
        let killed = killed.to_vec();
        let ideal = ideal.clone();
        let ring = module.ring_arc().clone();
        Self::new(module, generators, move |a| {
            let coeffs = a
                .coeffs
                .iter()
                .filter(|(k, _)| !killed.contains(k))
                .map(|(k, c)| (*k, ideal.project(c)))
                .filter(|(_, c)| !ring.is_zero(c))
                .collect();
            ModElem { dim: a.dim.clone(), coeffs }
        })
    }
}

impl Submodule<ProductRing> {
    /// The span of `generators` over `Q × G`. Every slice of the ring is a
    /// copy of `Q`, so each slice of the span is the `Q`-span of the
    /// coefficient vectors, and cosets reduce by Gaussian elimination.
    pub fn span_over_field(module: &FreeDimModule<ProductRing>, generators: Vec<ModElem<Dimensioned<crate::rational::Q>>>) -> Result<Self> {
        let n = module.rank();
        let values = move |a: &ModElem<Dimensioned<crate::rational::Q>>| {
            let mut v = vec![crate::rational::Q::zero(); n];
            for (k, c) in &a.coeffs {
                v[*k] = c.value.clone();
            }
            v
        };
        for g in &generators {
            module.check(g)?;
        }
        let basis = EchelonBasis::span(n, generators.iter().map(values));
        let m = module.clone();
        Self::new(module, generators, move |a| {
            let reduced = basis.reduce(&values(a));
            let terms = reduced
                .into_iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .map(|(k, x)| (k, Dimensioned::new(x, m.coeff_dim(k, &a.dim).expect("reduction stays in the orbit"))))
                .collect();
            m.elem(a.dim.clone(), terms).expect("reduction stays in the slice")
        })
    }
}

/// `A/S` as a module over `R/I`, for `I·A ⊂ S`.
pub struct QuotientModule<R: DimRing> {
    ring: QuotientRing<R>,
    module: FreeDimModule<R>,
    sub: Submodule<R>,
}

impl<R: DimRing> fmt::Debug for QuotientModule<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("QuotientModule").field("module", &self.module).field("sub", &self.sub).finish_non_exhaustive()
    }
}

impl<R: DimRing> QuotientModule<R> {
    /// `ring` must be a quotient of the module's base ring. Fails with a
    /// witness when some `i·e_k` or `i·a` on probes is not in `S`.
    pub fn new(module: FreeDimModule<R>, sub: Submodule<R>, ring: QuotientRing<R>) -> Result<Self> {
        let mut tests: Vec<ModElem<R::Elem>> = (0..module.rank()).map(|k| module.basis_elem(k)).collect();
        tests.extend(module.probes());
        for i in ring.generators() {
            for a in &tests {
                let ia = module.act(i, a);
                if !sub.contains(&ia) {
                    return Err(AlgebraError::Invalid(format!(
                        "I·A is not inside S: {} · {} = {}",
                        module.ring().describe(i),
                        module.describe(a),
                        module.describe(&ia)
                    )));
                }
            }
        }
        Ok(QuotientModule { ring, module, sub })
    }

    /// The projection `Q: A → A/S`, twisted by `q: R → R/I`.
    pub fn project(&self, a: &ModElem<R::Elem>) -> ModElem<R::Elem> {
        self.sub.reduce(a)
    }

    pub fn module(&self) -> &FreeDimModule<R> {
        &self.module
    }

    pub fn submodule(&self) -> &Submodule<R> {
        &self.sub
    }

    /// `Q(r·a) = q(r)·Q(a)`, and the expansion
    /// `(r + i)·(a + s) = r·a + (i·a + r·s + i·s)` landing in the coset of
    /// `r·a`, on random probes with `i ∈ I` and `s ∈ S`.
    pub fn projection_report(&self, count: usize, rng: &mut dyn RngCore) -> Report {
        let base = self.module.ring();
        let mut linear = LawCheck::new("q-linearity");
        let mut leibniz = LawCheck::new("coset expansion");
        let gens_i = self.ring.generators();
        let gens_s = self.sub.generators();
        for _ in 0..count {
            let a = self.module.sample(rng);
            let r = base.sample(rng);
            let w = || format!("r={}, a={}", base.describe(&r), self.module.describe(&a));
            let lhs = self.project(&self.module.act(&r, &a));
            let rhs = self.act(&self.ring.project(&r), &self.project(&a));
            linear.record(lhs == rhs, w);

            // i of dimension δ(r) and s over dim(a), built from generators.
            let i = pick(gens_i, rng).and_then(|g| {
                let d = base.monoid().divide(&base.dim(&r), &base.dim(g))?;
                let x = base.sample_in(&d, rng).ok()?;
                Some(base.mul(&x, g))
            });
            let s = pick(gens_s, rng).and_then(|g| {
                let d = self.module.gset().quotient(&a.dim, &g.dim)?;
                let x = base.sample_in(&d, rng).ok()?;
                Some(self.module.act(&x, g))
            });
            let ri = match i {
                Some(i) => base.add(&r, &i).ok(),
                None => Some(r.clone()),
            };
            let as_ = match s {
                Some(s) => self.module.add(&a, &s).ok(),
                None => Some(a.clone()),
            };
            let expanded = ri.zip(as_).map(|(ri, as_)| self.project(&self.module.act(&ri, &as_)));
            leibniz.record(expanded.as_ref() == Some(&lhs), w);
        }
        let mut report = Report::new("quotient projection");
        report.push(linear.finish());
        report.push(leibniz.finish());
        report
    }
}

fn pick<'a, T>(xs: &'a [T], rng: &mut dyn RngCore) -> Option<&'a T> {
    use rand::Rng;
    (!xs.is_empty()).then(|| &xs[rng.gen_range(0..xs.len())])
}

impl<R: DimRing> DimModule for QuotientModule<R> {
    type Ring = QuotientRing<R>;
    type Elem = ModElem<R::Elem>;

    fn ring(&self) -> &QuotientRing<R> {
        &self.ring
    }

    fn dim(&self, a: &Self::Elem) -> GPoint {
        a.dim.clone()
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        self.module.add(a, b).map(|s| self.project(&s))
    }

    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        self.project(&self.module.neg(a))
    }

    fn zero(&self, x: &GPoint) -> Result<Self::Elem> {
        self.module.zero(x)
    }

    fn act(&self, r: &R::Elem, a: &Self::Elem) -> Self::Elem {
        self.project(&self.module.act(r, a))
    }

    fn act_dim(&self, r: &R::Elem) -> Dim {
        self.module.ring().dim(r)
    }

    fn act_point(&self, g: &Dim, x: &GPoint) -> GPoint {
        self.module.act_point(g, x)
    }

    fn probes(&self) -> Vec<Self::Elem> {
        let mut out: Vec<Self::Elem> = Vec::new();
        for p in self.module.probes() {
            let q = self.project(&p);
            if !out.contains(&q) {
                out.push(q);
            }
        }
        out
    }

    fn sample(&self, rng: &mut dyn RngCore) -> Self::Elem {
        self.project(&self.module.sample(rng))
    }

    fn sample_like(&self, like: &Self::Elem, rng: &mut dyn RngCore) -> Self::Elem {
        self.project(&self.module.sample_like(like, rng))
    }

    fn describe(&self, a: &Self::Elem) -> String {
        self.module.describe(a)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dim::DimMonoid;
    use crate::module::{module_axiom_report, GSet};
    use crate::rational::{int, Q};
    use crate::ring::table::tests::zm_over_z2;
    use crate::ring::{Scalar, TableRing};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn qz() -> Arc<ProductRing> {
        Arc::new(ProductRing::new(DimMonoid::free(1)))
    }

    fn no_ideal(r: &ProductRing) -> QuotientRing<ProductRing> {
        QuotientRing::new(r.clone(), vec![], |a| a.clone()).unwrap()
    }

    fn three(r: &Arc<ProductRing>) -> FreeDimModule<ProductRing> {
        let gset = GSet::new(DimMonoid::free(1), vec!["a".into(), "b".into()]).unwrap();
        let basis = vec![("e".into(), GPoint::new([0], 0)), ("f".into(), GPoint::new([1], 0)), ("g".into(), GPoint::new([0], 1))];
        FreeDimModule::new(r.clone(), gset, basis).unwrap()
    }

    #[test]
    fn whole_module_gives_trivial_quotient() {
        let r = qz();
        let a = three(&r);
        let all: Vec<_> = (0..3).map(|k| a.basis_elem(k)).collect();
        let s = Submodule::span_over_field(&a, all).unwrap();
        let q = QuotientModule::new(a.clone(), s, no_ideal(&r)).unwrap();
        for p in a.probes() {
            assert!(q.project(&p).coeffs.is_empty());
        }
        let by_monomial = Submodule::monomial(&a, &no_ideal(&r), &[0, 1, 2]).unwrap();
        assert!(a.probes().iter().all(|p| by_monomial.contains(p)));
    }

    #[test]
    fn quotient_drops_a_generator() {
        let r = qz();
        let a = three(&r);
        let s = Submodule::span_over_field(&a, vec![a.basis_elem(0)]).unwrap();
        let q = QuotientModule::new(a.clone(), s, no_ideal(&r)).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..200 {
            let x = a.sample(&mut rng);
            // Oracle: delete the e-coordinate.
            let mut expect = x.clone();
            expect.coeffs.remove(&0);
            assert_eq!(q.project(&x), expect);
        }
        let rep = q.projection_report(200, &mut rng);
        assert!(rep.all_passed(), "{rep}");
        assert!(module_axiom_report(&q, 200, &mut rng, "A/S").all_passed());
    }

    #[test]
    fn span_of_a_combination() {
        // S = span(e + t·f) where t has dimension -1 so e and t·f share a slice.
        let r = qz();
        let a = three(&r);
        let t = r.elem(int(3), [-1]);
        let gen = a.add(&a.basis_elem(0), &a.act(&t, &a.basis_elem(1))).unwrap();
        let s = Submodule::span_over_field(&a, vec![gen.clone()]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        // Every R-combination of the generator lies in S.
        for _ in 0..200 {
            let c = r.sample(&mut rng);
            assert!(s.contains(&a.act(&c, &gen)));
        }
        // e ≡ -3f modulo S, and S meets no basis vector.
        let lhs = s.reduce(&a.basis_elem(0));
        let rhs = s.reduce(&a.act(&r.elem(int(-3), [-1]), &a.basis_elem(1)));
        assert_eq!(lhs, rhs);
        for k in 0..3 {
            assert!(!s.contains(&a.basis_elem(k)));
        }
        // A random element is in S exactly when its e and f values are in ratio 1:3.
        for _ in 0..200 {
            let x = a.random_in_slice(&GPoint::new([rng.gen_range(-2..=2)], 0), &mut rng);
            let val = |k| x.coeffs.get(&k).map(|c: &Scalar| c.value.clone()).unwrap_or_else(Q::zero);
            assert_eq!(s.contains(&x), val(1) == val(0) * int(3));
        }
    }

    #[test]
    fn broken_normal_form_is_rejected() {
        let r = qz();
        let a = three(&r);
        // Dropping e is not a normal form for the span of f.
        assert!(Submodule::new(&a, vec![a.basis_elem(1)], |x: &ModElem<Scalar>| {
            let mut y = x.clone();
            y.coeffs.remove(&0);
            y
        })
        .is_err());
    }

    fn z4_module() -> (Arc<TableRing>, FreeDimModule<TableRing>, QuotientRing<TableRing>) {
        let r = zm_over_z2(4);
        let ideal = QuotientRing::new(r.clone(), vec![r.index("2@0").unwrap()], |a: &usize| (a / 4) * 4 + (a % 4) % 2).unwrap();
        let r = Arc::new(r);
        let gset = GSet::single(DimMonoid::cyclic(2)).unwrap();
        let basis = vec![("e".into(), GPoint::new([0], 0)), ("f".into(), GPoint::new([1], 0))];
        (r.clone(), FreeDimModule::new(r, gset, basis).unwrap(), ideal)
    }

    #[test]
    fn quotient_over_quotient_ring() {
        let (_, a, ideal) = z4_module();
        let s = Submodule::monomial(&a, &ideal, &[1]).unwrap();
        let q = QuotientModule::new(a.clone(), s, ideal).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let rep = q.projection_report(300, &mut rng);
        assert!(rep.all_passed(), "{rep}");
        assert!(module_axiom_report(&q, 300, &mut rng, "A/S over R/I").all_passed());
        // Two slices, each F2 on e: four classes.
        let mut classes: Vec<ModElem<usize>> = Vec::new();
        for _ in 0..400 {
            let x = q.sample(&mut rng);
            if !classes.contains(&x) {
                classes.push(x);
            }
        }
        assert_eq!(classes.len(), 4);
    }

    #[test]
    fn ideal_must_act_into_submodule() {
        let (_, a, ideal) = z4_module();
        let zero = QuotientRing::new(a.ring().clone(), vec![], |x: &usize| *x).unwrap();
        // S = R·f alone does not contain 2·e.
        let s = Submodule::monomial(&a, &zero, &[1]).unwrap();
        let err = QuotientModule::new(a, s, ideal).unwrap_err();
        assert!(err.to_string().contains("I·A is not inside S"), "{err}");
    }
}
