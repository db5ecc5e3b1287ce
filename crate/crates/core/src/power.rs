//! Lines, factors and power rings.
//!
//! A line is a one-dimensional rational vector space with no preferred unit.
//! Its power ring `L^⊙` collects every integer tensor power `L^n`, with
//! `L^0 = Q` and `L^{-n}` the dual of `L^n`. Elements are stored as a
//! coordinate against an internal reference basis together with the
//! exponent vector; the basis never leaks out of this module, and every
//! observable operation commutes with the power functor.

use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};
use rand::{Rng, RngCore};

use crate::dim::{Dim, DimMonoid};
use crate::error::{AlgebraError, Result};
use crate::rational::{int, pow, ratio, Q};
use crate::report::{LawCheck, Report};
use crate::ring::{unit_section_check, DimRing, SectionFailure, SectionSpec, UnitSection};

#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Line {
    name: String,
}

impl Line {
    pub fn new(name: impl Into<String>) -> Self {
        Line { name: name.into() }
    }

    pub fn name(&self) -> &str {
        &self.name
    }
}

impl fmt::Display for Line {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

/// An invertible linear map between lines, given by the coordinate of the
/// image of the source reference basis.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Factor {
    source: Line,
    target: Line,
    scalar: Q,
}

impl Factor {
    pub fn new(source: Line, target: Line, scalar: Q) -> Result<Self> {
        if scalar.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        Ok(Factor { source, target, scalar })
    }

    pub fn identity(line: Line) -> Self {
        Factor { source: line.clone(), target: line, scalar: Q::one() }
    }

    pub fn source(&self) -> &Line {
        &self.source
    }

    pub fn target(&self) -> &Line {
        &self.target
    }

    pub fn scalar(&self) -> &Q {
        &self.scalar
    }

    /// `self ∘ inner`.
    pub fn after(&self, inner: &Factor) -> Result<Factor> {
        if inner.target != self.source {
            return Err(AlgebraError::DomainMismatch(format!("{} -> {} then {} -> {}", inner.source, inner.target, self.source, self.target)));
        }
        Ok(Factor { source: inner.source.clone(), target: self.target.clone(), scalar: &self.scalar * &inner.scalar })
    }

    pub fn inverse(&self) -> Factor {
        Factor { source: self.target.clone(), target: self.source.clone(), scalar: self.scalar.recip() }
    }
}

/// An ordered list of lines `(L_1, .., L_k)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LineSystem(Arc<Vec<Line>>);

impl LineSystem {
    pub fn new(lines: Vec<Line>) -> Self {
        LineSystem(Arc::new(lines))
    }

    pub fn single(line: Line) -> Self {
        Self::new(vec![line])
    }

    pub fn lines(&self) -> &[Line] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }
}

/// An element of `L^{n_1} ⊗ .. ⊗ L^{n_k}`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PowerElem {
    system: LineSystem,
    coord: Q,
    exp: Dim,
}

impl PowerElem {
    pub fn coord(&self) -> &Q {
        &self.coord
    }

    pub fn exponents(&self) -> &Dim {
        &self.exp
    }

    pub fn system(&self) -> &LineSystem {
        &self.system
    }
}

impl fmt::Display for PowerElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::rational::to_exact_string(&self.coord))?;
        for (line, n) in self.system.lines().iter().zip(&self.exp.0) {
            if *n != 0 {
                write!(f, " {line}^{n}")?;
            }
        }
        Ok(())
    }
}

/// `(L_1, .., L_k)^⊙`, a dimensioned field over `Z^k`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PowerRing {
    system: LineSystem,
    monoid: DimMonoid,
}

impl PowerRing {
    pub fn new(system: LineSystem) -> Self {
        let monoid = DimMonoid::free(system.rank());
        PowerRing { system, monoid }
    }

    pub fn single(line: Line) -> Self {
        Self::new(LineSystem::single(line))
    }

    pub fn system(&self) -> &LineSystem {
        &self.system
    }

    pub fn rank(&self) -> usize {
        self.system.rank()
    }

    pub fn elem(&self, coord: Q, exp: impl Into<Dim>) -> Result<PowerElem> {
        let exp = exp.into();
        self.monoid.check(&exp)?;
        Ok(PowerElem { system: self.system.clone(), coord, exp })
    }

    fn owns(&self, x: &PowerElem) -> Result<()> {
        if x.system != self.system {
            return Err(AlgebraError::DomainMismatch("element belongs to another line system".into()));
        }
        Ok(())
    }

    /// `x ⊙ y`: coordinates multiply, exponents add. Pairing a dual with a
    /// primal element is the special case of opposite exponents.
    pub fn odot(&self, x: &PowerElem, y: &PowerElem) -> Result<PowerElem> {
        self.owns(x)?;
        self.owns(y)?;
        Ok(self.mul(x, y))
    }

    /// `L_i^⊙` inside the multi-line ring: exponents other than `i` are 0.
    pub fn embed(&self, i: usize, x: &PowerElem) -> Result<PowerElem> {
        if i >= self.rank() || x.system.rank() != 1 || x.system.lines()[0] != self.system.lines()[i] {
            return Err(AlgebraError::DomainMismatch(format!("line {i} of the system")));
        }
        let mut exp = vec![0; self.rank()];
        exp[i] = x.exp.0[0];
        self.elem(x.coord.clone(), exp)
    }

    /// The single-line power ring of line `i`.
    pub fn factor_ring(&self, i: usize) -> PowerRing {
        PowerRing::single(self.system.lines()[i].clone())
    }

    /// The unit section `U(n) = u_1^{n_1} ⊙ .. ⊙ u_k^{n_k}` induced by a
    /// choice of unit `u_i ∈ L_i` per line.
    pub fn unit_section(&self, units: &[Q]) -> std::result::Result<UnitSection<PowerElem>, SectionFailure> {
        if let Some(i) = units.iter().position(|u| u.is_zero()) {
            let mut d = vec![0; self.rank()];
            d[i] = 1;
            return Err(SectionFailure::Zero { dim: Dim(d) });
        }
        let gens = units
            .iter()
            .enumerate()
            .map(|(i, u)| {
                let mut d = vec![0; self.rank()];
                d[i] = 1;
                PowerElem { system: self.system.clone(), coord: u.clone(), exp: Dim(d) }
            })
            .collect();
        unit_section_check(self, SectionSpec::Generators(gens))
    }
}

impl DimRing for PowerRing {
    type Elem = PowerElem;

    fn monoid(&self) -> &DimMonoid {
        &self.monoid
    }

    fn dim(&self, a: &PowerElem) -> Dim {
        a.exp.clone()
    }

    fn add(&self, a: &PowerElem, b: &PowerElem) -> Result<PowerElem> {
        self.owns(a)?;
        self.owns(b)?;
        if a.exp != b.exp {
            return Err(AlgebraError::DimensionMismatch { left: a.exp.clone(), right: b.exp.clone() });
        }
        Ok(PowerElem { system: self.system.clone(), coord: &a.coord + &b.coord, exp: a.exp.clone() })
    }

    fn neg(&self, a: &PowerElem) -> PowerElem {
        PowerElem { coord: -&a.coord, ..a.clone() }
    }

    fn zero(&self, d: &Dim) -> Result<PowerElem> {
        self.elem(Q::zero(), d.clone())
    }

    fn one(&self) -> PowerElem {
        PowerElem { system: self.system.clone(), coord: Q::one(), exp: self.monoid.identity() }
    }

    fn mul(&self, a: &PowerElem, b: &PowerElem) -> PowerElem {
        debug_assert!(a.system == self.system && b.system == self.system);
        PowerElem { system: self.system.clone(), coord: &a.coord * &b.coord, exp: a.exp.plus(&b.exp) }
    }

    fn is_zero(&self, a: &PowerElem) -> bool {
        a.coord.is_zero()
    }

    fn is_commutative(&self) -> bool {
        true
    }

    fn probes(&self) -> Vec<PowerElem> {
        let coords = [int(0), int(1), int(-1), int(3), ratio(-2, 5)];
        self.monoid
            .probe_elements(2)
            .into_iter()
            .flat_map(|d| {
                coords.iter().map(move |c| PowerElem { system: self.system.clone(), coord: c.clone(), exp: d.clone() })
            })
            .collect()
    }

    fn sample(&self, rng: &mut dyn RngCore) -> PowerElem {
        let exp = Dim((0..self.rank()).map(|_| rng.gen_range(-3..=3)).collect());
        let coord = if rng.gen_ratio(1, 10) { Q::zero() } else { ratio(rng.gen_range(-50..=50), rng.gen_range(1..=12)) };
        PowerElem { system: self.system.clone(), coord, exp }
    }

    fn sample_in(&self, d: &Dim, rng: &mut dyn RngCore) -> Result<PowerElem> {
        self.elem(ratio(rng.gen_range(-50..=50), rng.gen_range(1..=12)), d.clone())
    }

    fn describe(&self, a: &PowerElem) -> String {
        a.to_string()
    }

    fn reciprocal(&self, a: &PowerElem) -> Result<PowerElem> {
        if a.coord.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        Ok(PowerElem { system: a.system.clone(), coord: a.coord.recip(), exp: a.exp.scaled(-1) })
    }

    fn scalar(&self, r: &Q) -> Option<PowerElem> {
        Some(PowerElem { system: self.system.clone(), coord: r.clone(), exp: self.monoid.identity() })
    }

    fn scalar_value(&self, a: &PowerElem) -> Option<Q> {
        a.exp.is_zero_vector().then(|| a.coord.clone())
    }
}

/// `(B_1 ⊗ .. ⊗ B_k)^⊙`: the power ring morphism induced by one factor per
/// line. On `L^n` it acts as `B^{⊗n}`, and on duals as `(B^{-1})^*`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerMap {
    source: PowerRing,
    target: PowerRing,
    factors: Vec<Factor>,
}

/// The power functor on a family of factors.
pub fn power_functor(factors: Vec<Factor>) -> PowerMap {
    let source = PowerRing::new(LineSystem::new(factors.iter().map(|f| f.source.clone()).collect()));
    let target = PowerRing::new(LineSystem::new(factors.iter().map(|f| f.target.clone()).collect()));
    PowerMap { source, target, factors }
}

impl PowerMap {
    pub fn source(&self) -> &PowerRing {
        &self.source
    }

    pub fn target(&self) -> &PowerRing {
        &self.target
    }

    /// `(c, n) ↦ (c · Π β_i^{n_i}, n)`.
    pub fn apply(&self, x: &PowerElem) -> Result<PowerElem> {
        self.source.owns(x)?;
        let mut c = x.coord.clone();
        for (f, &n) in self.factors.iter().zip(&x.exp.0) {
            c *= pow(&f.scalar, n);
        }
        self.target.elem(c, x.exp.clone())
    }

    /// `self ∘ inner`, built from composed factors.
    pub fn after(&self, inner: &PowerMap) -> Result<PowerMap> {
        if inner.factors.len() != self.factors.len() {
            return Err(AlgebraError::DomainMismatch("line systems of different rank".into()));
        }
        let factors = self.factors.iter().zip(&inner.factors).map(|(c, b)| c.after(b)).collect::<Result<Vec<_>>>()?;
        Ok(power_functor(factors))
    }
}

/// Probe elements of a single-line ring with exponents `-3..=3`.
pub fn exponent_probes(ring: &PowerRing, coords: &[Q]) -> Vec<PowerElem> {
    let k = ring.rank();
    let mut out = Vec::new();
    for n in -3..=3 {
        for i in 0..k.max(1) {
            let mut e = vec![0; k];
            if k > 0 {
                e[i] = n;
            }
            for c in coords {
                out.push(ring.elem(c.clone(), e.clone()).expect("in Z^k"));
            }
        }
    }
    out
}

/// Checks `(C∘B)^⊙ = C^⊙∘B^⊙`, `id^⊙ = id`, and that both sides preserve
/// `⊙` and slice addition on the probes.
pub fn functoriality_check(b: &Factor, c: &Factor, probes: &[PowerElem]) -> Report {
    let bb = power_functor(vec![b.clone()]);
    let cc = power_functor(vec![c.clone()]);
    let mut report = Report::new(format!("power functor on {} -> {} -> {}", b.source, b.target, c.target));

    let mut comp = LawCheck::new("composition");
    let mut ident = LawCheck::new("identity");
    let mut mult = LawCheck::new("preserves product");
    let mut add = LawCheck::new("preserves addition");
    let cb = c.after(b).map(|f| power_functor(vec![f]));
    let id = power_functor(vec![Factor::identity(b.source.clone())]);
    for x in probes {
        let lhs = cb.as_ref().ok().and_then(|m| m.apply(x).ok());
        let rhs = bb.apply(x).and_then(|y| cc.apply(&y)).ok();
        comp.record(lhs.is_some() && lhs == rhs, || x.to_string());
        ident.record(id.apply(x).ok().as_ref() == Some(x), || x.to_string());
        for y in probes {
            let src = bb.source();
            let lhs = bb.apply(&src.mul(x, y)).ok();
            let rhs = match (bb.apply(x), bb.apply(y)) {
                (Ok(fx), Ok(fy)) => Some(bb.target().mul(&fx, &fy)),
                _ => None,
            };
            mult.record(lhs.is_some() && lhs == rhs, || format!("{x} ⊙ {y}"));
            if x.exp == y.exp {
                let lhs = src.add(x, y).and_then(|s| bb.apply(&s)).ok();
                let rhs = bb.apply(x).and_then(|fx| bb.apply(y).and_then(|fy| bb.target().add(&fx, &fy))).ok();
                add.record(lhs.is_some() && lhs == rhs, || format!("{x} + {y}"));
            }
        }
    }
    for law in [comp, ident, mult, add] {
        report.push(law.finish());
    }
    report
}
