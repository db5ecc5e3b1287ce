//! Dimensioned bilinear multiplications, graded polynomial algebras,
//! derivations and dimensioned Poisson algebras.
//!
//! Dimensions here live in `Z^k` and are written additively.

pub mod derivation;
pub mod endo;
pub mod poisson;
pub mod poly;
pub mod product;
pub mod reduce;

use std::fmt::Debug;

use rand::RngCore;

use crate::dim::Dim;
use crate::error::Result;
use crate::report::{LawCheck, Report};

pub use derivation::{DimDerivation, DimensionlessDerivation};
pub use endo::LinearEndos;
pub use poisson::{coisotrope_check, leibniz_dimensions, poisson_axiom_report, BracketAlgebra, DimPoisson};
pub use poly::{GradedPolyRing, Mono, Poly, PolyProduct};
pub use product::{poisson_product_hetero, poisson_product_homo, PoissonProduct};
pub use reduce::{poisson_reduce, Reduced};

/// A module with a bilinear multiplication `M` covering a dimension map `μ`.
pub trait DimAlgebra {
    type Scalar: Clone + Debug;
    type Elem: Clone + PartialEq + Debug;

    fn dim(&self, a: &Self::Elem) -> Dim;

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem>;

    fn neg(&self, a: &Self::Elem) -> Self::Elem;

    fn is_zero(&self, a: &Self::Elem) -> bool;

    /// `M(a, b)`.
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem>;

    /// The dimension map `μ`.
    fn mu(&self, d: &Dim, e: &Dim) -> Dim;

    fn scalar_mul(&self, r: &Self::Scalar, s: &Self::Scalar) -> Self::Scalar;

    /// The module action `r · a`.
    fn act(&self, r: &Self::Scalar, a: &Self::Elem) -> Self::Elem;

    /// How a scalar dimension moves element dimensions.
    fn act_dim(&self, g: &Dim, d: &Dim) -> Dim;

    fn scalar_dim(&self, r: &Self::Scalar) -> Dim;

    fn sample(&self, rng: &mut dyn RngCore) -> Self::Elem;

    fn sample_like(&self, like: &Self::Elem, rng: &mut dyn RngCore) -> Self::Elem;

    fn sample_scalar(&self, rng: &mut dyn RngCore) -> Self::Scalar;

    fn describe(&self, a: &Self::Elem) -> String {
        format!("{a:?}")
    }

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        self.add(a, &self.neg(b))
    }
}

/// The three bilinearity equations and `μ(gd, he) = gh·μ(d, e)`, plus
/// `dim M(a, b) = μ(dim a, dim b)`, on `count` random instances.
pub fn bilinear_check<A: DimAlgebra>(alg: &A, count: usize, rng: &mut dyn RngCore) -> Report {
    let mut left = LawCheck::new("additive in the first entry");
    let mut right = LawCheck::new("additive in the second entry");
    let mut scalars = LawCheck::new("M(ra, sb) = rs M(a, b)");
    let mut dims = LawCheck::new("dimension map");
    let mut equi = LawCheck::new("equivariance");
    let show = |a: &A::Elem| alg.describe(a);
    for _ in 0..count {
        let a = alg.sample(rng);
        let a2 = alg.sample_like(&a, rng);
        let b = alg.sample(rng);
        let b2 = alg.sample_like(&b, rng);
        let (r, s) = (alg.sample_scalar(rng), alg.sample_scalar(rng));

        let lhs = alg.add(&a, &a2).and_then(|x| alg.mul(&x, &b)).ok();
        let rhs = match (alg.mul(&a, &b), alg.mul(&a2, &b)) {
            (Ok(x), Ok(y)) => alg.add(&x, &y).ok(),
            _ => None,
        };
        left.record(lhs.is_some() && lhs == rhs, || format!("a={}, a'={}, b={}", show(&a), show(&a2), show(&b)));

        let lhs = alg.add(&b, &b2).and_then(|y| alg.mul(&a, &y)).ok();
        let rhs = match (alg.mul(&a, &b), alg.mul(&a, &b2)) {
            (Ok(x), Ok(y)) => alg.add(&x, &y).ok(),
            _ => None,
        };
        right.record(lhs.is_some() && lhs == rhs, || format!("a={}, b={}, b'={}", show(&a), show(&b), show(&b2)));

        let lhs = alg.mul(&alg.act(&r, &a), &alg.act(&s, &b)).ok();
        let rhs = alg.mul(&a, &b).ok().map(|m| alg.act(&alg.scalar_mul(&r, &s), &m));
        scalars.record(lhs.is_some() && lhs == rhs, || format!("a={}, b={}, r={r:?}, s={s:?}", show(&a), show(&b)));

        if let Ok(m) = alg.mul(&a, &b) {
            let want = alg.mu(&alg.dim(&a), &alg.dim(&b));
            dims.record(alg.dim(&m) == want, || format!("a={}, b={}", show(&a), show(&b)));
        }

        let (g, h) = (alg.scalar_dim(&r), alg.scalar_dim(&s));
        let (d, e) = (alg.dim(&a), alg.dim(&b));
        let lhs = alg.mu(&alg.act_dim(&g, &d), &alg.act_dim(&h, &e));
        let rhs = alg.act_dim(&g, &alg.act_dim(&h, &alg.mu(&d, &e)));
        equi.record(lhs == rhs, || format!("g={g}, h={h}, d={d}, e={e}"));
    }
    let mut report = Report::new("bilinear multiplication");
    for law in [left, right, scalars, dims, equi] {
        report.push(law.finish());
    }
    report
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Property {
    Symmetric,
    Antisymmetric,
    Associative,
    Jacobi,
}

impl Property {
    pub fn name(self) -> &'static str {
        match self {
            Property::Symmetric => "symmetric",
            Property::Antisymmetric => "antisymmetric",
            Property::Associative => "associative",
            Property::Jacobi => "jacobi",
        }
    }
}

/// Checks one property on `count` random triples. The dimension binar is
/// checked first (commutative for the two-entry properties, associative for
/// the three-entry ones); if that fails no element-level check is run.
pub fn property_check<A: DimAlgebra>(alg: &A, property: Property, count: usize, rng: &mut dyn RngCore) -> Report {
    let mut report = Report::new(format!("{} multiplication", property.name()));
    let samples: Vec<[A::Elem; 3]> = (0..count).map(|_| [alg.sample(rng), alg.sample(rng), alg.sample(rng)]).collect();
    let mut pre = match property {
        Property::Symmetric | Property::Antisymmetric => LawCheck::new("dimension binar commutative"),
        Property::Associative | Property::Jacobi => LawCheck::new("dimension binar associative"),
    };
    for [a, b, c] in &samples {
        let (d, e, f) = (alg.dim(a), alg.dim(b), alg.dim(c));
        match property {
            Property::Symmetric | Property::Antisymmetric => {
                pre.record(alg.mu(&d, &e) == alg.mu(&e, &d), || format!("d={d}, e={e}"));
            }
            Property::Associative | Property::Jacobi => {
                let ok = alg.mu(&alg.mu(&d, &e), &f) == alg.mu(&d, &alg.mu(&e, &f));
                pre.record(ok, || format!("d={d}, e={e}, f={f}"));
            }
        }
    }
    let blocked = pre.failed();
    report.push(pre.finish());
    if blocked {
        return report;
    }
    let mut law = LawCheck::new(property.name());
    let show = |x: &A::Elem| alg.describe(x);
    for [a, b, c] in &samples {
        let zero = |x: Result<A::Elem>| x.map(|x| alg.is_zero(&x)).unwrap_or(false);
        let m = |x: &A::Elem, y: &A::Elem| alg.mul(x, y);
        let ok = match property {
            Property::Symmetric => zero(m(a, b).and_then(|x| alg.sub(&x, &m(b, a)?))),
            Property::Antisymmetric => zero(m(a, b).and_then(|x| alg.add(&x, &m(b, a)?))),
            Property::Associative => zero(m(a, b).and_then(|ab| alg.sub(&m(&ab, c)?, &m(a, &m(b, c)?)?))),
            Property::Jacobi => zero((|| {
                let x = m(a, &m(b, c)?)?;
                let y = m(b, &m(c, a)?)?;
                let z = m(c, &m(a, b)?)?;
                alg.add(&alg.add(&x, &y)?, &z)
            })()),
        };
        law.record(ok, || match property {
            Property::Symmetric | Property::Antisymmetric => format!("a={}, b={}", show(a), show(b)),
            _ => format!("a={}, b={}, c={}", show(a), show(b), show(c)),
        });
    }
    report.push(law.finish());
    report
}
