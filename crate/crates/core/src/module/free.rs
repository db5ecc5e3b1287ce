use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use rand::{Rng, RngCore};

use crate::dim::Dim;
use crate::error::{AlgebraError, Result};
use crate::report::{LawCheck, Report};
use crate::ring::DimRing;

use super::maps::{linear_map_check, MapViolation, ModuleMap, RingMorphism};
use super::{gset_tensor, DimModule, GPoint, GSet, GSetTensor, ModElem};

/// A free dimensioned module with a finite basis of named vectors placed at
/// points of a free G-set.
pub struct FreeDimModule<R: DimRing> {
    ring: Arc<R>,
    gset: GSet,
    basis: Vec<(String, GPoint)>,
}

impl<R: DimRing> Clone for FreeDimModule<R> {
    fn clone(&self) -> Self {
        FreeDimModule { ring: self.ring.clone(), gset: self.gset.clone(), basis: self.basis.clone() }
    }
}

impl<R: DimRing> fmt::Debug for FreeDimModule<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FreeDimModule").field("gset", &self.gset).field("basis", &self.basis).finish()
    }
}

impl<R: DimRing> FreeDimModule<R> {
    pub fn new(ring: Arc<R>, gset: GSet, basis: Vec<(String, GPoint)>) -> Result<Self> {
        if ring.monoid() != gset.monoid() {
            return Err(AlgebraError::DomainMismatch(format!(
                "ring acts through {} but the G-set is over {}",
                ring.monoid(),
                gset.monoid()
            )));
        }
        for (name, p) in &basis {
            gset.check(p).map_err(|_| AlgebraError::Invalid(format!("basis vector {name} at {p} is outside the G-set")))?;
        }
        Ok(FreeDimModule { ring, gset, basis })
    }

    /// The ring as a module over itself, with basis `1` at the identity.
    pub fn regular(ring: Arc<R>) -> Result<Self> {
        let gset = GSet::single(ring.monoid().clone())?;
        let one = GPoint { g: ring.monoid().identity(), orbit: 0 };
        Self::new(ring, gset, vec![("1".into(), one)])
    }

    pub fn ring_arc(&self) -> &Arc<R> {
        &self.ring
    }

    pub fn gset(&self) -> &GSet {
        &self.gset
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis_name(&self, k: usize) -> &str {
        &self.basis[k].0
    }

    pub fn basis_point(&self, k: usize) -> &GPoint {
        &self.basis[k].1
    }

    /// The ring dimension a coefficient of basis `k` needs for the sum to
    /// sit over `x`.
    pub fn coeff_dim(&self, k: usize, x: &GPoint) -> Option<Dim> {
        self.gset.quotient(x, &self.basis[k].1)
    }

    pub fn basis_elem(&self, k: usize) -> ModElem<R::Elem> {
        ModElem { dim: self.basis[k].1.clone(), coeffs: BTreeMap::from([(k, self.ring.one())]) }
    }

    /// `Σ c_k e_k` over `x`, merging repeated indices and dropping zeros.
    pub fn elem(&self, x: GPoint, terms: Vec<(usize, R::Elem)>) -> Result<ModElem<R::Elem>> {
        self.gset.check(&x)?;
        let mut coeffs: BTreeMap<usize, R::Elem> = BTreeMap::new();
        for (k, c) in terms {
            if k >= self.rank() {
                return Err(AlgebraError::Invalid(format!("basis index {k} out of range")));
            }
            let want = self.coeff_dim(k, &x).ok_or_else(|| {
                AlgebraError::Invalid(format!("basis {} cannot contribute to slice {x}", self.basis_name(k)))
            })?;
            let got = self.ring.dim(&c);
            if got != want {
                return Err(AlgebraError::DimensionMismatch { left: got, right: want });
            }
            let c = match coeffs.remove(&k) {
                Some(old) => self.ring.add(&old, &c)?,
                None => c,
            };
            coeffs.insert(k, c);
        }
        coeffs.retain(|_, c| !self.ring.is_zero(c));
        Ok(ModElem { dim: x, coeffs })
    }

    pub fn check(&self, a: &ModElem<R::Elem>) -> Result<()> {
        self.gset.check(&a.dim)?;
        for (k, c) in &a.coeffs {
            let want = (*k < self.rank()).then(|| self.coeff_dim(*k, &a.dim)).flatten();
            if want.as_ref() != Some(&self.ring.dim(c)) || self.ring.is_zero(c) {
                return Err(AlgebraError::Invalid(format!("malformed coefficient at basis index {k}")));
            }
        }
        Ok(())
    }

    /// The coefficient of basis `k`, zero when absent.
    pub fn coefficient(&self, a: &ModElem<R::Elem>, k: usize) -> Option<R::Elem> {
        match a.coeffs.get(&k) {
            Some(c) => Some(c.clone()),
            None => self.coeff_dim(k, &a.dim).and_then(|d| self.ring.zero(&d).ok()),
        }
    }

    fn in_orbit(&self, orbit: usize) -> Vec<usize> {
        (0..self.rank()).filter(|&k| self.basis[k].1.orbit == orbit).collect()
    }

    /// A random element over `x`.
    pub fn random_in_slice(&self, x: &GPoint, rng: &mut dyn RngCore) -> ModElem<R::Elem> {
        let mut terms = Vec::new();
        for k in self.in_orbit(x.orbit) {
            if rng.gen_ratio(3, 4) {
                let d = self.coeff_dim(k, x).expect("same orbit");
                if let Ok(c) = self.ring.sample_in(&d, rng) {
                    terms.push((k, c));
                }
            }
        }
        self.elem(x.clone(), terms).expect("coefficients sampled in their slices")
    }
}

impl<R: DimRing> DimModule for FreeDimModule<R> {
    type Ring = R;
    type Elem = ModElem<R::Elem>;

    fn ring(&self) -> &R {
        &self.ring
    }

    fn dim(&self, a: &Self::Elem) -> GPoint {
        a.dim.clone()
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        if a.dim != b.dim {
            return Err(AlgebraError::Invalid(format!("cannot add across slices {} and {}", a.dim, b.dim)));
        }
        let terms = a.coeffs.iter().chain(&b.coeffs).map(|(k, c)| (*k, c.clone())).collect();
        self.elem(a.dim.clone(), terms)
    }

    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        ModElem { dim: a.dim.clone(), coeffs: a.coeffs.iter().map(|(k, c)| (*k, self.ring.neg(c))).collect() }
    }

    fn zero(&self, x: &GPoint) -> Result<Self::Elem> {
        self.gset.check(x)?;
        Ok(ModElem { dim: x.clone(), coeffs: BTreeMap::new() })
    }

    fn act(&self, r: &R::Elem, a: &Self::Elem) -> Self::Elem {
        let dim = self.gset.act(&self.ring.dim(r), &a.dim);
        let mut coeffs = BTreeMap::new();
        for (k, c) in &a.coeffs {
            let p = self.ring.mul(r, c);
            if !self.ring.is_zero(&p) {
                coeffs.insert(*k, p);
            }
        }
        ModElem { dim, coeffs }
    }

    fn act_point(&self, g: &Dim, x: &GPoint) -> GPoint {
        self.gset.act(g, x)
    }

    fn probes(&self) -> Vec<Self::Elem> {
        let scalars: Vec<R::Elem> = self.ring.probes().into_iter().filter(|r| !self.ring.is_zero(r)).take(8).collect();
        let mut out = Vec::new();
        for k in 0..self.rank() {
            for r in &scalars {
                out.push(self.act(r, &self.basis_elem(k)));
            }
        }
        let n = out.len();
        for i in 0..n {
            for j in i + 1..n {
                if out[i].dim == out[j].dim && out[i].coeffs.keys().ne(out[j].coeffs.keys()) {
                    let s = self.add(&out[i], &out[j]).expect("same slice");
                    out.push(s);
                }
            }
        }
        if out.is_empty() {
            out.extend(self.gset.probes().into_iter().take(3).map(|x| ModElem { dim: x, coeffs: BTreeMap::new() }));
        }
        out
    }

    fn sample(&self, rng: &mut dyn RngCore) -> Self::Elem {
        if self.rank() == 0 {
            let ps = self.gset.probes();
            let x = ps[rng.gen_range(0..ps.len())].clone();
            return ModElem { dim: x, coeffs: BTreeMap::new() };
        }
        let k = rng.gen_range(0..self.rank());
        let r = self.ring.sample(rng);
        let x = self.gset.act(&self.ring.dim(&r), &self.basis[k].1);
        let base = self.random_in_slice(&x, rng);
        self.add(&base, &self.act(&r, &self.basis_elem(k))).expect("same slice")
    }

    fn sample_like(&self, like: &Self::Elem, rng: &mut dyn RngCore) -> Self::Elem {
        self.random_in_slice(&like.dim, rng)
    }

    fn describe(&self, a: &Self::Elem) -> String {
        if a.coeffs.is_empty() {
            return format!("0_{}", a.dim);
        }
        let terms: Vec<String> =
            a.coeffs.iter().map(|(k, c)| format!("({})·{}", self.ring.describe(c), self.basis_name(*k))).collect();
        terms.join(" + ")
    }
}

fn same_ring<R: DimRing>(a: &FreeDimModule<R>, b: &FreeDimModule<R>) -> Result<()> {
    if !Arc::ptr_eq(&a.ring, &b.ring) {
        return Err(AlgebraError::DomainMismatch("modules over different base rings".into()));
    }
    Ok(())
}

/// `A ⊕_D B` with its inclusions and projections.
pub struct DirectSum<R: DimRing> {
    pub module: FreeDimModule<R>,
    left_rank: usize,
}

pub fn direct_sum_mod<R: DimRing>(a: &FreeDimModule<R>, b: &FreeDimModule<R>) -> Result<DirectSum<R>> {
    same_ring(a, b)?;
    if a.gset != b.gset {
        return Err(AlgebraError::DomainMismatch("direct sums need the same dimension set".into()));
    }
    let basis = a.basis.iter().cloned().chain(b.basis.iter().cloned()).collect();
    Ok(DirectSum { module: FreeDimModule::new(a.ring.clone(), a.gset.clone(), basis)?, left_rank: a.rank() })
}

impl<R: DimRing> DirectSum<R> {
    /// `a ⊕_d b` for `a`, `b` over the same `d`.
    pub fn pair(&self, a: &ModElem<R::Elem>, b: &ModElem<R::Elem>) -> Result<ModElem<R::Elem>> {
        if a.dim != b.dim {
            return Err(AlgebraError::Invalid(format!("components over {} and {}", a.dim, b.dim)));
        }
        let terms = a
            .coeffs
            .iter()
            .map(|(k, c)| (*k, c.clone()))
            .chain(b.coeffs.iter().map(|(k, c)| (k + self.left_rank, c.clone())))
            .collect();
        self.module.elem(a.dim.clone(), terms)
    }

    pub fn split(&self, x: &ModElem<R::Elem>) -> (ModElem<R::Elem>, ModElem<R::Elem>) {
        let mut l = ModElem { dim: x.dim.clone(), coeffs: BTreeMap::new() };
        let mut r = l.clone();
        for (k, c) in &x.coeffs {
            if *k < self.left_rank {
                l.coeffs.insert(*k, c.clone());
            } else {
                r.coeffs.insert(k - self.left_rank, c.clone());
            }
        }
        (l, r)
    }

    pub fn left_rank(&self) -> usize {
        self.left_rank
    }
}

/// `A ⊗_{R_G} B` over `D ×^G E`; basis `e_k ⊗ f_l` has index `k·rank(B) + l`.
pub struct Tensor<R: DimRing> {
    pub module: FreeDimModule<R>,
    pub gsets: GSetTensor,
    right_rank: usize,
}

pub fn tensor_mod<R: DimRing>(a: &FreeDimModule<R>, b: &FreeDimModule<R>) -> Result<Tensor<R>> {
    same_ring(a, b)?;
    if !a.ring.is_commutative() {
        return Err(AlgebraError::Unsupported("tensor products need a commutative ring".into()));
    }
    let gsets = gset_tensor(&a.gset, &b.gset)?;
    let mut basis = Vec::new();
    for (na, da) in &a.basis {
        for (nb, db) in &b.basis {
            basis.push((format!("{na}⊗{nb}"), gsets.eta(da, db)));
        }
    }
    let module = FreeDimModule::new(a.ring.clone(), gsets.gset.clone(), basis)?;
    Ok(Tensor { module, gsets, right_rank: b.rank() })
}

impl<R: DimRing> Tensor<R> {
    /// `a ⊗ b`, bilinear by construction.
    pub fn product(&self, a: &ModElem<R::Elem>, b: &ModElem<R::Elem>) -> Result<ModElem<R::Elem>> {
        let ring = &self.module.ring;
        let mut terms = Vec::new();
        for (k, x) in &a.coeffs {
            for (l, y) in &b.coeffs {
                terms.push((k * self.right_rank + l, ring.mul(x, y)));
            }
        }
        self.module.elem(self.gsets.eta(&a.dim, &b.dim), terms)
    }

    pub fn split_index(&self, i: usize) -> (usize, usize) {
        (i / self.right_rank, i % self.right_rank)
    }
}

/// Factors a bilinear map `Φ: A × B → C` through `A ⊗ B` by setting
/// `φ(e_k ⊗ f_l) := Φ(e_k, f_l)`, then checks `φ(a ⊗ b) = Φ(a, b)` and the
/// balancing relation `Φ(r·a, b) = Φ(a, r·b)` on random probes.
pub fn bilinear_factorization<R: DimRing>(
    a: &FreeDimModule<R>,
    b: &FreeDimModule<R>,
    c: &FreeDimModule<R>,
    phi: impl Fn(&ModElem<R::Elem>, &ModElem<R::Elem>) -> Option<ModElem<R::Elem>>,
    probes: usize,
    rng: &mut dyn RngCore,
) -> std::result::Result<(Tensor<R>, ModuleMap<R, R>), MapViolation> {
    let t = tensor_mod(a, b).map_err(|e| MapViolation { law: "tensor product".into(), witness: e.to_string() })?;
    let mut images = Vec::new();
    for k in 0..a.rank() {
        for l in 0..b.rank() {
            match phi(&a.basis_elem(k), &b.basis_elem(l)) {
                Some(img) => images.push(img),
                None => {
                    return Err(MapViolation {
                        law: "defined on basis".into(),
                        witness: format!("({}, {})", a.basis_name(k), b.basis_name(l)),
                    })
                }
            }
        }
    }
    let map = linear_map_check(&t.module, c, RingMorphism::identity(), images, rng)?;
    let ring = a.ring();
    for _ in 0..probes {
        let x = a.sample(rng);
        let y = b.sample(rng);
        let r = ring.sample(rng);
        let w = || format!("a={}, b={}", a.describe(&x), b.describe(&y));
        let via = t.product(&x, &y).ok().and_then(|p| map.apply(&p).ok());
        if via.is_none() || via != phi(&x, &y) {
            return Err(MapViolation { law: "factorization".into(), witness: w() });
        }
        let l = phi(&a.act(&r, &x), &y);
        if l.is_none() || l != phi(&x, &b.act(&r, &y)) {
            return Err(MapViolation { law: "balanced".into(), witness: format!("{}, r={}", w(), ring.describe(&r)) });
        }
    }
    Ok((t, map))
}

/// The distributivity isomorphism `(A ⊕ B) ⊗ C ≅ (A ⊗ C) ⊕ (B ⊗ C)` as an
/// explicit bijection of bases in both directions.
pub struct RigIso<R: DimRing> {
    pub sum: DirectSum<R>,
    pub lhs: Tensor<R>,
    pub left: Tensor<R>,
    pub right: Tensor<R>,
    pub rhs: DirectSum<R>,
    pub forward: ModuleMap<R, R>,
    pub backward: ModuleMap<R, R>,
}

pub fn rig_distributivity_witness<R: DimRing>(
    a: &FreeDimModule<R>,
    b: &FreeDimModule<R>,
    c: &FreeDimModule<R>,
    rng: &mut dyn RngCore,
) -> Result<RigIso<R>> {
    let sum = direct_sum_mod(a, b)?;
    let lhs = tensor_mod(&sum.module, c)?;
    let left = tensor_mod(a, c)?;
    let right = tensor_mod(b, c)?;
    if left.module.gset != right.module.gset {
        return Err(AlgebraError::DomainMismatch("tensor dimension sets differ".into()));
    }
    let rhs = direct_sum_mod(&left.module, &right.module)?;
    let (ra, rc) = (a.rank(), c.rank());
    // (k, l) with k < rank(A) goes to the left summand, otherwise to the right.
    let to_rhs = |i: usize| {
        let (k, l) = lhs.split_index(i);
        if k < ra {
            k * rc + l
        } else {
            ra * rc + (k - ra) * rc + l
        }
    };
    let n = lhs.module.rank();
    let mut inverse = vec![0; n];
    let fwd_images: Vec<_> = (0..n)
        .map(|i| {
            let j = to_rhs(i);
            inverse[j] = i;
            rhs.module.basis_elem(j)
        })
        .collect();
    let bwd_images: Vec<_> = inverse.iter().map(|&i| lhs.module.basis_elem(i)).collect();
    let err = |v: MapViolation| AlgebraError::Invalid(v.to_string());
    let forward = linear_map_check(&lhs.module, &rhs.module, RingMorphism::identity(), fwd_images, rng).map_err(err)?;
    let backward = linear_map_check(&rhs.module, &lhs.module, RingMorphism::identity(), bwd_images, rng).map_err(err)?;
    Ok(RigIso { sum, lhs, left, right, rhs, forward, backward })
}

impl<R: DimRing> RigIso<R> {
    /// Exhaustive over the probe sets of the three modules: round trips,
    /// compatibility with the action and addition, and
    /// `F((a ⊕ b) ⊗ c) = (a ⊗ c) ⊕ (b ⊗ c)`.
    pub fn verify(&self, a: &[ModElem<R::Elem>], b: &[ModElem<R::Elem>], c: &[ModElem<R::Elem>], scalars: &[R::Elem]) -> Report {
        let lm = &self.lhs.module;
        let ring = lm.ring();
        let mut round = LawCheck::new("round trip");
        let mut action = LawCheck::new("commutes with action");
        let mut addition = LawCheck::new("commutes with addition");
        let mut formula = LawCheck::new("(a+b)c = ac + bc");
        for x in a {
            for y in b.iter().filter(|y| y.dim == x.dim) {
                let Ok(s) = self.sum.pair(x, y) else { continue };
                for z in c {
                    let w = || format!("a={}, b={}, c={:?}", lm.describe(&s), self.sum.module.describe(y), z.dim);
                    let Ok(t) = self.lhs.product(&s, z) else { continue };
                    let f = self.forward.apply(&t).ok();
                    let back = f.as_ref().and_then(|f| self.backward.apply(f).ok());
                    round.record(back.as_ref() == Some(&t), w);
                    let expect = match (self.left.product(x, z), self.right.product(y, z)) {
                        (Ok(l), Ok(r)) => self.rhs.pair(&l, &r).ok(),
                        _ => None,
                    };
                    formula.record(f.is_some() && f == expect, w);
                    for r in scalars {
                        let lhs = self.forward.apply(&lm.act(r, &t)).ok();
                        let rhs = f.as_ref().map(|f| self.rhs.module.act(r, f));
                        action.record(lhs.is_some() && lhs == rhs, || format!("r={}", ring.describe(r)));
                        let t2 = lm.act(r, &t);
                        if t2.dim == t.dim {
                            let lhs = lm.add(&t, &t2).ok().and_then(|u| self.forward.apply(&u).ok());
                            let rhs = match (&f, self.forward.apply(&t2)) {
                                (Some(f), Ok(g)) => self.rhs.module.add(f, &g).ok(),
                                _ => None,
                            };
                            addition.record(lhs.is_some() && lhs == rhs, || format!("r={}", ring.describe(r)));
                        }
                    }
                }
            }
        }
        let mut report = Report::new("(A ⊕ B) ⊗ C ≅ A ⊗ C ⊕ B ⊗ C");
        for law in [round, action, addition, formula] {
            report.push(law.finish());
        }
        report
    }
}
