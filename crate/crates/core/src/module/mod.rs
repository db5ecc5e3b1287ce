//! Dimensioned modules over dimensioned rings.
//!
//! Dimension sets of modules are free G-sets `G × I` with a finite orbit
//! index set `I`, so that `D ×^G E` has canonical representatives.

pub mod free;
pub mod maps;
pub mod pullback;
pub mod quotient;

use std::collections::BTreeMap;
use std::fmt::{self, Debug};

use rand::RngCore;

use crate::dim::{Dim, DimMonoid};
use crate::error::{AlgebraError, Result};
use crate::report::{LawCheck, Report};
use crate::ring::DimRing;

pub use free::{bilinear_factorization, direct_sum_mod, rig_distributivity_witness, tensor_mod, FreeDimModule, RigIso, Tensor};
pub use maps::{linear_map_check, MapViolation, ModuleMap, RingMorphism};
pub use pullback::PullbackModule;
pub use quotient::{QuotientModule, Submodule};

/// A point `(g, i)` of a free G-set.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct GPoint {
    pub g: Dim,
    pub orbit: usize,
}

impl GPoint {
    pub fn new(g: impl Into<Dim>, orbit: usize) -> Self {
        GPoint { g: g.into(), orbit }
    }
}

impl fmt::Display for GPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{}", self.g, self.orbit)
    }
}

/// The free G-set `G × I` with `g'·(g, i) = (g'g, i)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GSet {
    monoid: DimMonoid,
    orbits: Vec<String>,
}

impl GSet {
    /// Requires a commutative group so that orbit coordinates can be divided.
    pub fn new(monoid: DimMonoid, orbits: Vec<String>) -> Result<Self> {
        if !monoid.is_group() || !monoid.is_commutative() {
            return Err(AlgebraError::NotAGroup(monoid.to_string()));
        }
        Ok(GSet { monoid, orbits })
    }

    pub fn single(monoid: DimMonoid) -> Result<Self> {
        Self::new(monoid, vec!["*".into()])
    }

    pub fn monoid(&self) -> &DimMonoid {
        &self.monoid
    }

    pub fn orbits(&self) -> &[String] {
        &self.orbits
    }

    pub fn contains(&self, x: &GPoint) -> bool {
        x.orbit < self.orbits.len() && self.monoid.contains(&x.g)
    }

    pub fn check(&self, x: &GPoint) -> Result<()> {
        if self.contains(x) {
            Ok(())
        } else {
            Err(AlgebraError::Invalid(format!("{x} is not a point of this G-set")))
        }
    }

    pub fn act(&self, g: &Dim, x: &GPoint) -> GPoint {
        GPoint { g: self.monoid.combine_unchecked(g, &x.g), orbit: x.orbit }
    }

    /// The unique `g` with `g·x = y`, if they share an orbit.
    pub fn quotient(&self, y: &GPoint, x: &GPoint) -> Option<Dim> {
        (x.orbit == y.orbit).then(|| self.monoid.divide(&y.g, &x.g)).flatten()
    }

    /// Probe points: probe monoid elements in every orbit.
    pub fn probes(&self) -> Vec<GPoint> {
        let gs = self.monoid.probe_elements(1);
        (0..self.orbits.len()).flat_map(|i| gs.iter().map(move |g| GPoint { g: g.clone(), orbit: i })).collect()
    }
}

/// `D ×^G E` with its quotient map `η`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GSetTensor {
    pub gset: GSet,
    right_orbits: usize,
}

impl GSetTensor {
    /// `η((g, i), (h, j)) = (gh, (i, j))`; the pair index is `i·|I_E| + j`.
    pub fn eta(&self, x: &GPoint, y: &GPoint) -> GPoint {
        GPoint { g: self.gset.monoid.combine_unchecked(&x.g, &y.g), orbit: x.orbit * self.right_orbits + y.orbit }
    }

    /// The orbit pair behind a tensor orbit index.
    pub fn split_orbit(&self, k: usize) -> (usize, usize) {
        (k / self.right_orbits, k % self.right_orbits)
    }
}

pub fn gset_tensor(d: &GSet, e: &GSet) -> Result<GSetTensor> {
    if d.monoid != e.monoid {
        return Err(AlgebraError::DomainMismatch(format!("acting monoids {} and {}", d.monoid, e.monoid)));
    }
    let orbits = d.orbits.iter().flat_map(|i| e.orbits.iter().map(move |j| format!("{i}*{j}"))).collect();
    Ok(GSetTensor { gset: GSet { monoid: d.monoid.clone(), orbits }, right_orbits: e.orbits.len() })
}

/// A dimension-homogeneous combination `Σ c_k e_k` of basis vectors.
/// Zero coefficients are never stored.
#[derive(Clone, PartialEq, Debug)]
pub struct ModElem<E> {
    pub dim: GPoint,
    pub coeffs: BTreeMap<usize, E>,
}

/// The interface shared by free, pulled back and quotient modules.
pub trait DimModule {
    type Ring: DimRing;
    type Elem: Clone + PartialEq + Debug;

    fn ring(&self) -> &Self::Ring;

    fn dim(&self, a: &Self::Elem) -> GPoint;

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem>;

    fn neg(&self, a: &Self::Elem) -> Self::Elem;

    fn zero(&self, x: &GPoint) -> Result<Self::Elem>;

    /// `r · a`.
    fn act(&self, r: &<Self::Ring as DimRing>::Elem, a: &Self::Elem) -> Self::Elem;

    /// How a ring element moves dimensions: `dim(r·a) = act_dim(r)·dim(a)`.
    fn act_dim(&self, r: &<Self::Ring as DimRing>::Elem) -> Dim {
        self.ring().dim(r)
    }

    /// The G-set action used for dimensions.
    fn act_point(&self, g: &Dim, x: &GPoint) -> GPoint;

    fn probes(&self) -> Vec<Self::Elem>;

    fn sample(&self, rng: &mut dyn RngCore) -> Self::Elem;

    /// A random element in the slice of `like`.
    fn sample_like(&self, like: &Self::Elem, rng: &mut dyn RngCore) -> Self::Elem;

    fn describe(&self, a: &Self::Elem) -> String {
        format!("{a:?}")
    }
}

/// The four module axioms plus the dimension law `dim(r·a) = δ(r)·dim(a)`,
/// checked on `count` random instances.
pub fn module_axiom_report<M: DimModule>(m: &M, count: usize, rng: &mut dyn RngCore, subject: &str) -> Report {
    let ring = m.ring();
    let mut ax1 = LawCheck::new("r(a+b) = ra + rb");
    let mut ax2 = LawCheck::new("(r+p)a = ra + pa");
    let mut ax3 = LawCheck::new("(rp)a = r(pa)");
    let mut ax4 = LawCheck::new("1a = a");
    let mut dims = LawCheck::new("dimension of action");
    let show = |x: &M::Elem| m.describe(x);
    for _ in 0..count {
        let a = m.sample(rng);
        let b = m.sample_like(&a, rng);
        let r = ring.sample(rng);
        let p = ring.sample_in(&ring.dim(&r), rng).unwrap_or_else(|_| r.clone());
        let q = ring.sample(rng);

        let lhs = m.add(&a, &b).map(|s| m.act(&r, &s)).ok();
        let rhs = m.add(&m.act(&r, &a), &m.act(&r, &b)).ok();
        ax1.record(lhs.is_some() && lhs == rhs, || format!("r={}, a={}, b={}", ring.describe(&r), show(&a), show(&b)));

        let lhs = ring.add(&r, &p).ok().map(|s| m.act(&s, &a));
        let rhs = m.add(&m.act(&r, &a), &m.act(&p, &a)).ok();
        ax2.record(lhs.is_some() && lhs == rhs, || format!("r={}, p={}, a={}", ring.describe(&r), ring.describe(&p), show(&a)));

        let lhs = m.act(&ring.mul(&r, &q), &a);
        let rhs = m.act(&r, &m.act(&q, &a));
        ax3.record(lhs == rhs, || format!("r={}, p={}, a={}", ring.describe(&r), ring.describe(&q), show(&a)));

        ax4.record(m.act(&ring.one(), &a) == a, || show(&a));

        let got = m.dim(&m.act(&r, &a));
        let want = m.act_point(&m.act_dim(&r), &m.dim(&a));
        dims.record(got == want, || format!("r={}, a={}", ring.describe(&r), show(&a)));
    }
    let mut report = Report::new(subject);
    for law in [ax1, ax2, ax3, ax4, dims] {
        report.push(law.finish());
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn gset(n: usize) -> GSet {
        GSet::new(DimMonoid::free(1), (0..n).map(|i| format!("o{i}")).collect()).unwrap()
    }

    #[test]
    fn action_law() {
        let d = gset(2);
        let x = GPoint::new([3], 1);
        let (g, h) = (Dim::scalar(2), Dim::scalar(-5));
        let gh = d.monoid().combine(&g, &h).unwrap();
        assert_eq!(d.act(&gh, &x), d.act(&g, &d.act(&h, &x)));
        assert_eq!(d.act(&Dim::scalar(0), &x), x);
        assert_eq!(d.quotient(&GPoint::new([7], 1), &x), Some(Dim::scalar(4)));
        assert_eq!(d.quotient(&GPoint::new([7], 0), &x), None);
        assert!(GSet::new(DimMonoid::maps(2), vec!["a".into()]).is_err());
    }

    #[test]
    fn tensor_of_gsets() {
        let z = GSet::single(DimMonoid::free(1)).unwrap();
        assert_eq!(gset_tensor(&z, &z).unwrap().gset.orbits().len(), 1);
        let t = gset_tensor(&gset(2), &gset(3)).unwrap();
        assert_eq!(t.gset.orbits().len(), 6);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        use rand::Rng;
        for _ in 0..200 {
            let g = Dim::scalar(rng.gen_range(-4..=4));
            let d = GPoint::new([rng.gen_range(-4..=4)], rng.gen_range(0..2));
            let e = GPoint::new([rng.gen_range(-4..=4)], rng.gen_range(0..3));
            let lhs = t.eta(&gset(2).act(&g, &d), &e);
            let rhs = t.eta(&d, &gset(3).act(&g, &e));
            assert_eq!(lhs, rhs);
        }
        assert!(gset_tensor(&gset(1), &GSet::single(DimMonoid::free(2)).unwrap()).is_err());
    }

    #[test]
    fn tensor_symmetric_and_associative_on_index_sets() {
        for a in 1..=3 {
            for b in 1..=3 {
                let ab = gset_tensor(&gset(a), &gset(b)).unwrap();
                let ba = gset_tensor(&gset(b), &gset(a)).unwrap();
                // Swap bijection (i, j) -> (j, i) on orbit indices.
                let swap: Vec<usize> = (0..a * b)
                    .map(|k| {
                        let (i, j) = ab.split_orbit(k);
                        j * a + i
                    })
                    .collect();
                let mut seen = swap.clone();
                seen.sort();
                seen.dedup();
                assert_eq!(seen.len(), ba.gset.orbits().len());
                for c in 1..=3 {
                    let l = gset_tensor(&ab.gset, &gset(c)).unwrap();
                    let bc = gset_tensor(&gset(b), &gset(c)).unwrap();
                    let r = gset_tensor(&gset(a), &bc.gset).unwrap();
                    assert_eq!(l.gset.orbits().len(), r.gset.orbits().len());
                    let x = GPoint::new([1], a - 1);
                    let y = GPoint::new([2], b - 1);
                    let z = GPoint::new([-4], c - 1);
                    let lhs = l.eta(&ab.eta(&x, &y), &z);
                    let rhs = r.eta(&x, &bc.eta(&y, &z));
                    assert_eq!(lhs.g, rhs.g);
                    // ((i, j), k) and (i, (j, k)) get the same flat index.
                    assert_eq!(lhs.orbit, rhs.orbit);
                }
            }
        }
    }
}
