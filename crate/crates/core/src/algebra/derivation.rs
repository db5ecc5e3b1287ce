use rand::RngCore;

use crate::dim::Dim;
use crate::error::{AlgebraError, Result};
use crate::rational::Q;
use crate::report::{LawCheck, Report};

use super::poly::{GradedPolyRing, Poly};

/// A derivation of `(A, *_p)` shifting dimensions by `d`, determined by the
/// images of the generators, `dim Δ(x_i) = d + g_i`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DimDerivation {
    ring: GradedPolyRing,
    shift: Dim,
    images: Vec<Poly>,
}

impl DimDerivation {
    pub fn new(ring: &GradedPolyRing, shift: Dim, images: Vec<Poly>) -> Result<Self> {
        if images.len() != ring.nvars() {
            return Err(AlgebraError::Invalid(format!("{} images for {} generators", images.len(), ring.nvars())));
        }
        for (i, img) in images.iter().enumerate() {
            let want = shift.plus(ring.gen_dim(i));
            if img.dim != want {
                return Err(AlgebraError::Invalid(format!(
                    "image of {} has dimension {} but the shift {shift} needs {want}",
                    ring.name(i),
                    img.dim
                )));
            }
        }
        Ok(DimDerivation { ring: ring.clone(), shift, images })
    }

    pub fn zero(ring: &GradedPolyRing, shift: Dim) -> Self {
        let images = (0..ring.nvars()).map(|i| ring.zero(shift.plus(ring.gen_dim(i)))).collect();
        DimDerivation { ring: ring.clone(), shift, images }
    }

    /// `∂/∂x_i`, with shift `−g_i − p`.
    pub fn partial(ring: &GradedPolyRing, i: usize) -> Self {
        let shift = ring.identity_dim().minus(ring.gen_dim(i)).minus(ring.product_dim());
        let mut d = Self::zero(ring, shift);
        d.images[i] = ring.one();
        d
    }

    /// `Σ x_i ∂/∂x_i`, dimensionless.
    pub fn euler(ring: &GradedPolyRing) -> Self {
        DimDerivation { ring: ring.clone(), shift: ring.identity_dim(), images: (0..ring.nvars()).map(|i| ring.var(i)).collect() }
    }

    pub fn ring(&self) -> &GradedPolyRing {
        &self.ring
    }

    pub fn shift(&self) -> &Dim {
        &self.shift
    }

    pub fn images(&self) -> &[Poly] {
        &self.images
    }

    pub fn is_zero(&self) -> bool {
        self.images.iter().all(Poly::is_zero)
    }

    /// `Δ(f) = Σ ∂f/∂x_i * Δ(x_i)`, of dimension `d + dim f`.
    pub fn apply(&self, f: &Poly) -> Poly {
        let r = &self.ring;
        let mut out = r.zero(self.shift.plus(&f.dim));
        for (i, img) in self.images.iter().enumerate() {
            let t = r.mul(&r.deriv(f, i), img);
            out = r.add(&out, &t).expect("every term sits over d + dim f");
        }
        out
    }

    fn same_ring(&self, other: &Self) -> Result<()> {
        if self.ring != other.ring {
            return Err(AlgebraError::DomainMismatch("derivations of different algebras".into()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        if self.shift != other.shift {
            return Err(AlgebraError::DimensionMismatch { left: self.shift.clone(), right: other.shift.clone() });
        }
        let images = self.images.iter().zip(&other.images).map(|(a, b)| self.ring.add(a, b)).collect::<Result<_>>()?;
        Ok(DimDerivation { images, ..self.clone() })
    }

    pub fn scale(&self, c: &Q) -> Self {
        DimDerivation { images: self.images.iter().map(|a| self.ring.scale(c, a)).collect(), ..self.clone() }
    }

    /// `[Δ, Δ'] = Δ∘Δ' − Δ'∘Δ`, with shift `d + d'`.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        let r = &self.ring;
        let images = (0..r.nvars())
            .map(|i| {
                let x = r.var(i);
                r.sub(&self.apply(&other.apply(&x)), &other.apply(&self.apply(&x)))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(r, self.shift.plus(&other.shift), images)
    }

    /// `Δ(f * g) = Δf * g + f * Δg` and `dim Δf = d + dim f` on random
    /// homogeneous probes.
    pub fn leibniz_report(&self, count: usize, max_degree: u32, rng: &mut dyn RngCore) -> Report {
        let r = &self.ring;
        let mut leibniz = LawCheck::new("Leibniz");
        let mut dims = LawCheck::new("dimension shift");
        for _ in 0..count {
            let f = r.sample(max_degree, rng);
            let g = r.sample(max_degree, rng);
            let lhs = self.apply(&r.mul(&f, &g));
            let rhs = r.add(&r.mul(&self.apply(&f), &g), &r.mul(&f, &self.apply(&g)));
            leibniz.record(rhs.as_ref() == Ok(&lhs), || format!("f={}, g={}", r.display(&f), r.display(&g)));
            dims.record(self.apply(&f).dim == self.shift.plus(&f.dim), || r.display(&f));
        }
        let mut report = Report::new("derivation");
        report.push(leibniz.finish());
        report.push(dims.finish());
        report
    }
}

/// A dimensionless derivation restricted to the slice of the unit, where it
/// is an ordinary derivation of that ring.
#[derive(Clone, Debug)]
pub struct DimensionlessDerivation {
    inner: DimDerivation,
}

impl DimensionlessDerivation {
    pub fn restrict(d: &DimDerivation) -> Result<Self> {
        if *d.shift() != d.ring.identity_dim() {
            return Err(AlgebraError::Invalid(format!("only dimensionless derivations restrict; shift is {}", d.shift())));
        }
        Ok(DimensionlessDerivation { inner: d.clone() })
    }

    /// The slice the restriction acts on: the dimension of `1`.
    pub fn slice(&self) -> Dim {
        self.inner.ring.one().dim
    }

    pub fn apply(&self, f: &Poly) -> Result<Poly> {
        if f.dim != self.slice() {
            return Err(AlgebraError::DimensionMismatch { left: f.dim.clone(), right: self.slice() });
        }
        Ok(self.inner.apply(f))
    }

    /// `[D, D'](f)` computed from the restrictions alone.
    pub fn commutator_apply(&self, other: &Self, f: &Poly) -> Result<Poly> {
        let r = &self.inner.ring;
        r.sub(&self.apply(&other.apply(f)?)?, &other.apply(&self.apply(f)?)?)
    }
}

impl DimDerivation {
    /// `Σ c x_i ∂/∂x_j` style derivations for tests and the CLI: image of
    /// generator `i` is `images[i]`, zero elsewhere.
    pub fn from_partial_images(ring: &GradedPolyRing, shift: Dim, images: &[(usize, Poly)]) -> Result<Self> {
        let mut d = Self::zero(ring, shift.clone());
        for (i, img) in images {
            d.images[*i] = img.clone();
        }
        Self::new(ring, shift, d.images)
    }
}
