use std::fmt;
use std::sync::Arc;

use rand::RngCore;

use crate::dim::Dim;
use crate::error::{AlgebraError, Result};

use super::{DimModule, FreeDimModule, GPoint, ModElem};
use crate::ring::DimRing;

/// A morphism of dimensioned rings `φ: S → T` with its dimension map `f`.
type ElemFn<A, B> = Arc<dyn Fn(&A) -> B + Send + Sync>;

pub struct RingMorphism<S: DimRing, T: DimRing> {
    map: ElemFn<S::Elem, T::Elem>,
    dim_map: Arc<dyn Fn(&Dim) -> Dim + Send + Sync>,
}

impl<S: DimRing, T: DimRing> Clone for RingMorphism<S, T> {
    fn clone(&self) -> Self {
        RingMorphism { map: self.map.clone(), dim_map: self.dim_map.clone() }
    }
}

impl<S: DimRing, T: DimRing> fmt::Debug for RingMorphism<S, T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("RingMorphism")
    }
}

impl<S: DimRing, T: DimRing> RingMorphism<S, T> {
    pub fn new(
        map: impl Fn(&S::Elem) -> T::Elem + Send + Sync + 'static,
        dim_map: impl Fn(&Dim) -> Dim + Send + Sync + 'static,
    ) -> Self {
        RingMorphism { map: Arc::new(map), dim_map: Arc::new(dim_map) }
    }

    pub fn apply(&self, r: &S::Elem) -> T::Elem {
        (self.map)(r)
    }

    pub fn apply_dim(&self, g: &Dim) -> Dim {
        (self.dim_map)(g)
    }

    /// `outer ∘ self`.
    pub fn then<U>(&self, outer: &RingMorphism<T, U>) -> RingMorphism<S, U>
    where
        S: 'static,
        T: 'static,
        U: DimRing + 'static,
    {
        let (f, g) = (self.map.clone(), outer.map.clone());
        let (df, dg) = (self.dim_map.clone(), outer.dim_map.clone());
        RingMorphism { map: Arc::new(move |r| g(&f(r))), dim_map: Arc::new(move |d| dg(&df(d))) }
    }
}

impl<R: DimRing> RingMorphism<R, R> {
    pub fn identity() -> Self {
        RingMorphism { map: Arc::new(|r: &R::Elem| r.clone()), dim_map: Arc::new(|d: &Dim| d.clone()) }
    }
}

/// A rejected candidate map with the first offending input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MapViolation {
    pub law: String,
    pub witness: String,
}

impl fmt::Display for MapViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} fails at {}", self.law, self.witness)
    }
}

impl std::error::Error for MapViolation {}

fn violation<T>(law: &str, witness: String) -> std::result::Result<T, MapViolation> {
    Err(MapViolation { law: law.into(), witness })
}

/// A φ-twisted linear map between free modules, `Φ(r·a) = φ(r)·Φ(a)`,
/// determined by the images of the basis. Plain linear maps use the
/// identity morphism.
pub struct ModuleMap<S: DimRing, T: DimRing> {
    source: FreeDimModule<S>,
    target: FreeDimModule<T>,
    morphism: RingMorphism<S, T>,
    images: Vec<ModElem<T::Elem>>,
    orbit_points: Vec<Option<GPoint>>,
}

impl<S: DimRing, T: DimRing> Clone for ModuleMap<S, T> {
    fn clone(&self) -> Self {
        ModuleMap {
            source: self.source.clone(),
            target: self.target.clone(),
            morphism: self.morphism.clone(),
            images: self.images.clone(),
            orbit_points: self.orbit_points.clone(),
        }
    }
}

impl<S: DimRing, T: DimRing> fmt::Debug for ModuleMap<S, T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ModuleMap").field("images", &self.images).field("orbit_points", &self.orbit_points).finish()
    }
}

/// Validates a candidate map given on basis vectors: each image must sit
/// over `F(d_k)` for a single equivariant dimension map `F`, and the
/// extension must be twisted-linear on random probes.
pub fn linear_map_check<S: DimRing, T: DimRing>(
    source: &FreeDimModule<S>,
    target: &FreeDimModule<T>,
    morphism: RingMorphism<S, T>,
    images: Vec<ModElem<T::Elem>>,
    rng: &mut dyn RngCore,
) -> std::result::Result<ModuleMap<S, T>, MapViolation> {
    if images.len() != source.rank() {
        return violation("defined on basis", format!("{} images for rank {}", images.len(), source.rank()));
    }
    let mut orbit_points: Vec<Option<GPoint>> = vec![None; source.gset().orbits().len()];
    for (k, img) in images.iter().enumerate() {
        if target.check(img).is_err() {
            return violation("image in target", format!("basis {}", source.basis_name(k)));
        }
        let d = source.basis_point(k);
        let fg = morphism.apply_dim(&d.g);
        let Some(base) = target.gset().monoid().divide(&img.dim.g, &fg) else {
            return violation("equivariance", format!("basis {}", source.basis_name(k)));
        };
        let p = GPoint { g: base, orbit: img.dim.orbit };
        match &orbit_points[d.orbit] {
            Some(q) if *q != p => {
                return violation(
                    "equivariance",
                    format!("basis {} lands in slice {} not of the form F({d})", source.basis_name(k), img.dim),
                )
            }
            _ => orbit_points[d.orbit] = Some(p),
        }
    }
    let map = ModuleMap { source: source.clone(), target: target.clone(), morphism, images, orbit_points };

    for x in source.gset().probes() {
        for g in source.gset().monoid().probe_elements(1) {
            let lhs = map.map_point(&source.gset().act(&g, &x));
            let rhs = target.gset().act(&map.morphism.apply_dim(&g), &map.map_point(&x));
            if lhs != rhs {
                return violation("equivariance", format!("g={g}, d={x}"));
            }
        }
    }
    let ring = source.ring();
    for _ in 0..64 {
        let a = source.sample(rng);
        let b = source.sample_like(&a, rng);
        let r = ring.sample(rng);
        let (Ok(fa), Ok(fb)) = (map.apply(&a), map.apply(&b)) else {
            return violation("defined on probes", source.describe(&a));
        };
        if map.apply(&source.act(&r, &a)).ok() != Some(target.act(&map.morphism.apply(&r), &fa)) {
            return violation("linearity", format!("r={}, a={}", ring.describe(&r), source.describe(&a)));
        }
        let sum = source.add(&a, &b).ok().and_then(|s| map.apply(&s).ok());
        if sum.is_none() || sum != target.add(&fa, &fb).ok() {
            return violation("additivity", format!("a={}, b={}", source.describe(&a), source.describe(&b)));
        }
    }
    Ok(map)
}

impl<S: DimRing, T: DimRing> ModuleMap<S, T> {
    pub fn source(&self) -> &FreeDimModule<S> {
        &self.source
    }

    pub fn target(&self) -> &FreeDimModule<T> {
        &self.target
    }

    pub fn morphism(&self) -> &RingMorphism<S, T> {
        &self.morphism
    }

    pub fn images(&self) -> &[ModElem<T::Elem>] {
        &self.images
    }

    /// The dimension map `F((g, i)) = f(g)·F((1, i))`.
    pub fn map_point(&self, x: &GPoint) -> GPoint {
        let fg = self.morphism.apply_dim(&x.g);
        match &self.orbit_points[x.orbit] {
            Some(p) => self.target.gset().act(&fg, p),
            // Orbits without basis vectors only carry zero and the basis says
            // nothing about them: keep the orbit index when the target has it.
            None => {
                let orbit = if x.orbit < self.target.gset().orbits().len() { x.orbit } else { 0 };
                GPoint { g: fg, orbit }
            }
        }
    }

    pub fn apply(&self, a: &ModElem<S::Elem>) -> Result<ModElem<T::Elem>> {
        self.source.check(a)?;
        let mut out = self.target.zero(&self.map_point(&a.dim))?;
        for (k, c) in &a.coeffs {
            let term = self.target.act(&self.morphism.apply(c), &self.images[*k]);
            out = self.target.add(&out, &term)?;
        }
        Ok(out)
    }

    /// `(r·Φ)(a) := r·Φ(a)`.
    pub fn scale(&self, r: &T::Elem) -> ModuleMap<S, T> {
        let g = self.target.ring().dim(r);
        ModuleMap {
            images: self.images.iter().map(|img| self.target.act(r, img)).collect(),
            orbit_points: self.orbit_points.iter().map(|p| p.as_ref().map(|p| self.target.gset().act(&g, p))).collect(),
            ..self.clone()
        }
    }

    /// Pointwise sum, defined when both maps share their dimension map.
    pub fn add(&self, other: &ModuleMap<S, T>) -> Result<ModuleMap<S, T>> {
        if self.orbit_points != other.orbit_points {
            return Err(AlgebraError::DimensionMapMismatch("module maps over different dimension maps".into()));
        }
        let images = self
            .images
            .iter()
            .zip(&other.images)
            .map(|(a, b)| self.target.add(a, b))
            .collect::<Result<Vec<_>>>()?;
        Ok(ModuleMap { images, ..self.clone() })
    }

    /// `outer ∘ self`, twisted by the composite morphism.
    pub fn then<U>(&self, outer: &ModuleMap<T, U>) -> Result<ModuleMap<S, U>>
    where
        S: 'static,
        T: 'static,
        U: DimRing + 'static,
    {
        let images = self.images.iter().map(|img| outer.apply(img)).collect::<Result<Vec<_>>>()?;
        let orbit_points = self.orbit_points.iter().map(|p| p.as_ref().map(|p| outer.map_point(p))).collect();
        Ok(ModuleMap {
            source: self.source.clone(),
            target: outer.target.clone(),
            morphism: self.morphism.then(&outer.morphism),
            images,
            orbit_points,
        })
    }

    /// The same map seen from a pulled-back source: `Ψ` becomes
    /// `ψ∘φ`-twisted.
    pub fn precompose_morphism<P: DimRing + 'static>(&self, phi: &RingMorphism<P, S>) -> RingMorphism<P, T>
    where
        S: 'static,
        T: 'static,
    {
        phi.then(&self.morphism)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dim::DimMonoid;
    use crate::module::GSet;
    use crate::rational::int;
    use crate::ring::ProductRing;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn module(points: &[(i64, usize)], orbits: usize) -> FreeDimModule<ProductRing> {
        let ring = Arc::new(ProductRing::new(DimMonoid::free(1)));
        let gset = GSet::new(DimMonoid::free(1), (0..orbits).map(|i| format!("o{i}")).collect()).unwrap();
        let basis = points.iter().enumerate().map(|(k, &(g, i))| (format!("e{k}"), GPoint::new([g], i))).collect();
        FreeDimModule::new(ring, gset, basis).unwrap()
    }

    #[test]
    fn identity_and_permutations() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let a = module(&[(0, 0), (2, 0), (1, 1)], 2);
        let id: Vec<_> = (0..3).map(|k| a.basis_elem(k)).collect();
        let m = linear_map_check(&a, &a, RingMorphism::identity(), id, &mut rng).unwrap();
        for p in a.probes() {
            assert_eq!(m.apply(&p).unwrap(), p);
        }
        // Swap the two orbits: e2 -> e0 and e0 -> e2 shifted consistently.
        let b = module(&[(0, 0), (1, 1)], 2);
        let swap = vec![b.basis_elem(1), b.basis_elem(0)];
        let m = linear_map_check(&b, &b, RingMorphism::identity(), swap, &mut rng).unwrap();
        assert_eq!(m.map_point(&GPoint::new([5], 0)), GPoint::new([6], 1));
    }

    #[test]
    fn non_equivariant_images_are_rejected() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let a = module(&[(0, 0), (2, 0)], 1);
        // e0 -> e0 forces F = id on the orbit, so e1 (at 2) must land at 2.
        let bad = vec![a.basis_elem(0), a.basis_elem(0)];
        let err = linear_map_check(&a, &a, RingMorphism::identity(), bad, &mut rng).unwrap_err();
        assert_eq!(err.law, "equivariance");
    }

    #[test]
    fn action_on_maps() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let a = module(&[(0, 0)], 1);
        let m = linear_map_check(&a, &a, RingMorphism::identity(), vec![a.basis_elem(0)], &mut rng).unwrap();
        let r = ProductRing::new(DimMonoid::free(1)).elem(int(3), [2]);
        let scaled = m.scale(&r);
        for p in a.probes() {
            assert_eq!(scaled.apply(&p).unwrap(), a.act(&r, &m.apply(&p).unwrap()));
        }
        let sum = m.add(&m).unwrap();
        let two = ProductRing::new(DimMonoid::free(1)).elem(int(2), [0]);
        assert_eq!(sum.apply(&a.basis_elem(0)).unwrap(), a.act(&two, &a.basis_elem(0)));
        assert!(m.add(&scaled).is_err());
    }
}
