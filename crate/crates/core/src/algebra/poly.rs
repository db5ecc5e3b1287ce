use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Signed, Zero};
use rand::{Rng, RngCore};

use crate::dim::Dim;
use crate::error::{AlgebraError, Result};
use crate::rational::{parse_rational, ratio, to_exact_string, Q};

use super::DimAlgebra;

/// Exponent vector of a monomial.
pub type Mono = Vec<u32>;

/// A dimension-homogeneous polynomial: every monomial has dimension `dim`.
/// Zero coefficients are never stored, so the zero polynomial still carries
/// its dimension.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Poly {
    pub dim: Dim,
    pub terms: BTreeMap<Mono, Q>,
}

impl Poly {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Highest total degree, `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.iter().sum()).max()
    }
}

/// `Q[x_1..x_n]` with generator dimensions `g_i ∈ Z^k` and a commutative
/// product `*_p` of dimension `p`, so `dim(f * g) = p + dim f + dim g`.
/// A monomial `x^α` is a `*_p`-product of `|α|` generators and has
/// dimension `Σ α_i g_i + (|α| − 1) p`; the unit sits at `−p`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GradedPolyRing {
    names: Vec<String>,
    gens: Vec<Dim>,
    p: Dim,
}

impl GradedPolyRing {
    pub fn new(names: Vec<String>, gens: Vec<Dim>, p: Dim) -> Result<Self> {
        if names.len() != gens.len() {
            return Err(AlgebraError::Invalid(format!("{} names for {} generator dimensions", names.len(), gens.len())));
        }
        let mut seen = BTreeSet::new();
        for (n, g) in names.iter().zip(&gens) {
            let valid = n.chars().next().is_some_and(|c| c.is_alphabetic() || c == '_')
                && n.chars().all(|c| c.is_alphanumeric() || c == '_');
            if !valid {
                return Err(AlgebraError::Invalid(format!("generator name {n:?} is not an identifier")));
            }
            if !seen.insert(n.clone()) {
                return Err(AlgebraError::Invalid(format!("generator {n} declared twice")));
            }
            if g.arity() != p.arity() {
                return Err(AlgebraError::Invalid(format!("generator {n} has dimension {g} outside Z^{}", p.arity())));
            }
        }
        Ok(GradedPolyRing { names, gens, p })
    }

    /// Convenience constructor with `p = 0` in `Z^k`.
    pub fn unshifted(gens: &[(&str, Dim)]) -> Result<Self> {
        let k = gens.first().map_or(1, |(_, g)| g.arity());
        Self::new(gens.iter().map(|(n, _)| n.to_string()).collect(), gens.iter().map(|(_, g)| g.clone()).collect(), Dim(vec![0; k]))
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn rank(&self) -> usize {
        self.p.arity()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn gen_dim(&self, i: usize) -> &Dim {
        &self.gens[i]
    }

    pub fn gen_dims(&self) -> &[Dim] {
        &self.gens
    }

    pub fn product_dim(&self) -> &Dim {
        &self.p
    }

    pub fn identity_dim(&self) -> Dim {
        Dim(vec![0; self.rank()])
    }

    pub fn mono_dim(&self, m: &[u32]) -> Dim {
        let deg: u32 = m.iter().sum();
        let mut d = self.p.scaled(deg as i64 - 1);
        for (e, g) in m.iter().zip(&self.gens) {
            d = d.plus(&g.scaled(*e as i64));
        }
        d
    }

    /// `dim(f * g)` for factors of dimension `d` and `e`.
    pub fn product_of(&self, d: &Dim, e: &Dim) -> Dim {
        self.p.plus(d).plus(e)
    }

    pub fn zero(&self, dim: Dim) -> Poly {
        Poly { dim, terms: BTreeMap::new() }
    }

    pub fn constant(&self, c: Q) -> Poly {
        self.monomial(vec![0; self.nvars()], c)
    }

    pub fn one(&self) -> Poly {
        self.constant(Q::one())
    }

    pub fn var(&self, i: usize) -> Poly {
        let mut m = vec![0; self.nvars()];
        m[i] = 1;
        self.monomial(m, Q::one())
    }

    pub fn var_named(&self, name: &str) -> Result<Poly> {
        self.index(name).map(|i| self.var(i)).ok_or_else(|| AlgebraError::Invalid(format!("unknown generator {name}")))
    }

    pub fn monomial(&self, m: Mono, c: Q) -> Poly {
        let dim = self.mono_dim(&m);
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { dim, terms }
    }

    /// Collects terms into a polynomial over `dim`, failing on any monomial
    /// of another dimension.
    pub fn poly(&self, dim: Dim, terms: impl IntoIterator<Item = (Mono, Q)>) -> Result<Poly> {
        let mut out = self.zero(dim);
        for (m, c) in terms {
            if m.len() != self.nvars() {
                return Err(AlgebraError::Invalid(format!("monomial with {} exponents in {} variables", m.len(), self.nvars())));
            }
            let md = self.mono_dim(&m);
            if md != out.dim {
                return Err(AlgebraError::DimensionMismatch { left: md, right: out.dim });
            }
            add_term(&mut out.terms, m, c);
        }
        Ok(out)
    }

    pub fn add(&self, a: &Poly, b: &Poly) -> Result<Poly> {
        if a.dim != b.dim {
            return Err(AlgebraError::DimensionMismatch { left: a.dim.clone(), right: b.dim.clone() });
        }
        let mut out = a.clone();
        for (m, c) in &b.terms {
            add_term(&mut out.terms, m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn neg(&self, a: &Poly) -> Poly {
        Poly { dim: a.dim.clone(), terms: a.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }

    pub fn sub(&self, a: &Poly, b: &Poly) -> Result<Poly> {
        self.add(a, &self.neg(b))
    }

    pub fn scale(&self, c: &Q, a: &Poly) -> Poly {
        if c.is_zero() {
            return self.zero(a.dim.clone());
        }
        Poly { dim: a.dim.clone(), terms: a.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect() }
    }

    /// `a *_p b`.
    pub fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        let mut terms = BTreeMap::new();
        for (m, x) in &a.terms {
            for (n, y) in &b.terms {
                let mn = m.iter().zip(n).map(|(i, j)| i + j).collect();
                add_term(&mut terms, mn, x * y);
            }
        }
        Poly { dim: self.product_of(&a.dim, &b.dim), terms }
    }

    pub fn pow(&self, a: &Poly, n: u32) -> Poly {
        (0..n).fold(self.one(), |acc, _| self.mul(&acc, a))
    }

    /// `∂f/∂x_i`, of dimension `dim f − g_i − p`.
    pub fn deriv(&self, f: &Poly, i: usize) -> Poly {
        let mut terms = BTreeMap::new();
        for (m, c) in &f.terms {
            if m[i] > 0 {
                let mut n = m.clone();
                n[i] -= 1;
                add_term(&mut terms, n, c * Q::from_integer(m[i].into()));
            }
        }
        Poly { dim: f.dim.minus(&self.gens[i]).minus(&self.p), terms }
    }

    /// Substitutes `x_i ↦ images[i]` and multiplies out; used to embed one
    /// polynomial algebra in another.
    pub fn substitute(&self, f: &Poly, target: &GradedPolyRing, images: &[Poly], dim: Dim) -> Result<Poly> {
        let mut out = target.zero(dim);
        for (m, c) in &f.terms {
            let mut t = target.constant(c.clone());
            for (i, e) in m.iter().enumerate() {
                t = target.mul(&t, &target.pow(&images[i], *e));
            }
            out = target.add(&out, &t)?;
        }
        Ok(out)
    }

    /// All monomials of total degree at most `max_degree`, graded by degree.
    pub fn monomials_up_to(&self, max_degree: u32) -> Vec<Mono> {
        let n = self.nvars();
        let mut out = vec![vec![0; n]];
        let mut frontier = vec![vec![0u32; n]];
        for _ in 0..max_degree {
            let mut next = BTreeSet::new();
            for m in &frontier {
                for i in 0..n {
                    let mut k = m.clone();
                    k[i] += 1;
                    next.insert(k);
                }
            }
            frontier = next.into_iter().collect();
            out.extend(frontier.iter().cloned());
        }
        out
    }

    /// Monomials of degree at most `max_degree`, grouped by dimension.
    pub fn slices_up_to(&self, max_degree: u32) -> BTreeMap<Dim, Vec<Mono>> {
        let mut out: BTreeMap<Dim, Vec<Mono>> = BTreeMap::new();
        for m in self.monomials_up_to(max_degree) {
            out.entry(self.mono_dim(&m)).or_default().push(m);
        }
        out
    }

    /// A random homogeneous polynomial of degree at most `max_degree`: a
    /// random monomial fixes the slice, then every monomial of that slice
    /// gets a small random coefficient, often zero.
    pub fn sample(&self, max_degree: u32, rng: &mut dyn RngCore) -> Poly {
        let all = self.monomials_up_to(max_degree);
        let m = &all[rng.gen_range(0..all.len())];
        self.sample_in(&self.mono_dim(m), max_degree, rng)
    }

    pub fn sample_in(&self, dim: &Dim, max_degree: u32, rng: &mut dyn RngCore) -> Poly {
        let mut out = self.zero(dim.clone());
        for m in self.monomials_up_to(max_degree) {
            if self.mono_dim(&m) == *dim && rng.gen_ratio(2, 3) {
                add_term(&mut out.terms, m, ratio(rng.gen_range(-5..=5), rng.gen_range(1..=3)));
            }
        }
        out
    }

    pub fn display(&self, f: &Poly) -> String {
        if f.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        // Highest degree first reads more naturally.
        let mut terms: Vec<_> = f.terms.iter().collect();
        terms.sort_by(|(a, _), (b, _)| {
            let (da, db): (u32, u32) = (a.iter().sum(), b.iter().sum());
            db.cmp(&da).then_with(|| b.cmp(a))
        });
        for (k, (m, c)) in terms.into_iter().enumerate() {
            let vars: Vec<String> = m
                .iter()
                .enumerate()
                .filter(|(_, e)| **e > 0)
                .map(|(i, e)| if *e == 1 { self.names[i].clone() } else { format!("{}^{e}", self.names[i]) })
                .collect();
            let mag = c.abs();
            if k == 0 {
                if c.is_negative() {
                    out.push('-');
                }
            } else {
                out.push_str(if c.is_negative() { " - " } else { " + " });
            }
            if vars.is_empty() {
                out.push_str(&to_exact_string(&mag));
            } else {
                if !mag.is_one() {
                    out.push_str(&to_exact_string(&mag));
                    out.push('*');
                }
                out.push_str(&vars.join("*"));
            }
        }
        out
    }

    /// Parses `2*q^2*p - 3/4 q + 1`-style input. Juxtaposition multiplies,
    /// parentheses group, and the result must be homogeneous. The zero
    /// polynomial is placed in the unit's slice.
    pub fn parse(&self, src: &str) -> Result<Poly> {
        let mut p = Parser { ring: self, src, pos: 0 };
        let raw = p.expr()?;
        p.skip_ws();
        if p.pos < src.len() {
            return Err(p.error("unexpected input"));
        }
        let Some(first) = raw.keys().next() else {
            return Ok(self.zero(self.mono_dim(&vec![0; self.nvars()])));
        };
        let dim = self.mono_dim(first);
        for m in raw.keys() {
            let d = self.mono_dim(m);
            if d != dim {
                return Err(AlgebraError::Invalid(format!(
                    "polynomial is not homogeneous: terms of dimension {dim} and {d}"
                )));
            }
        }
        Ok(Poly { dim, terms: raw })
    }
}

fn add_term(terms: &mut BTreeMap<Mono, Q>, m: Mono, c: Q) {
    if c.is_zero() {
        return;
    }
    match terms.get_mut(&m) {
        Some(x) => {
            *x += c;
            if x.is_zero() {
                terms.remove(&m);
            }
        }
        None => {
            terms.insert(m, c);
        }
    }
}

type Raw = BTreeMap<Mono, Q>;

struct Parser<'a> {
    ring: &'a GradedPolyRing,
    src: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> AlgebraError {
        AlgebraError::Parse { pos: self.pos, msg: msg.into() }
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += self.peek().unwrap().len_utf8();
        }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn expr(&mut self) -> Result<Raw> {
        let mut acc = Raw::new();
        let mut first = true;
        loop {
            self.skip_ws();
            let sign = match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    Q::one()
                }
                Some('-') => {
                    self.pos += 1;
                    -Q::one()
                }
                _ if first => Q::one(),
                _ => return Ok(acc),
            };
            first = false;
            for (m, c) in self.term()? {
                add_term(&mut acc, m, c * &sign);
            }
        }
    }

    fn term(&mut self) -> Result<Raw> {
        let mut acc = self.factor()?;
        loop {
            self.skip_ws();
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    let f = self.factor()?;
                    acc = raw_mul(&acc, &f);
                }
                Some(c) if c.is_alphanumeric() || c == '_' || c == '(' => {
                    let f = self.factor()?;
                    acc = raw_mul(&acc, &f);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Raw> {
        self.skip_ws();
        let n = self.ring.nvars();
        let base = match self.peek() {
            Some('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                self.skip_ws();
                if self.peek() != Some(')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                inner
            }
            Some(c) if c.is_ascii_digit() || c == '.' => {
                let start = self.pos;
                while self.peek().is_some_and(|c| c.is_ascii_digit() || c == '.' || c == '/') {
                    self.pos += 1;
                }
                let text = &self.src[start..self.pos];
                let q = parse_rational(text).map_err(|_| AlgebraError::Parse { pos: start, msg: format!("bad number {text:?}") })?;
                let mut r = Raw::new();
                add_term(&mut r, vec![0; n], q);
                r
            }
            Some(c) if c.is_alphabetic() || c == '_' => {
                let start = self.pos;
                while self.peek().is_some_and(|c| c.is_alphanumeric() || c == '_') {
                    self.pos += self.peek().unwrap().len_utf8();
                }
                let name = &self.src[start..self.pos];
                let i = self.ring.index(name).ok_or_else(|| AlgebraError::Parse { pos: start, msg: format!("unknown generator {name}") })?;
                let mut m = vec![0; n];
                m[i] = 1;
                Raw::from([(m, Q::one())])
            }
            _ => return Err(self.error("expected a number, generator or '('")),
        };
        self.skip_ws();
        if self.peek() == Some('^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                self.pos += 1;
            }
            let e: u32 = self.src[start..self.pos].parse().map_err(|_| AlgebraError::Parse { pos: start, msg: "expected an exponent".into() })?;
            let mut acc = Raw::from([(vec![0; n], Q::one())]);
            for _ in 0..e {
                acc = raw_mul(&acc, &base);
            }
            return Ok(acc);
        }
        Ok(base)
    }
}

fn raw_mul(a: &Raw, b: &Raw) -> Raw {
    let mut out = Raw::new();
    for (m, x) in a {
        for (n, y) in b {
            add_term(&mut out, m.iter().zip(n).map(|(i, j)| i + j).collect(), x * y);
        }
    }
    out
}

/// The commutative product of a graded polynomial ring as a bilinear
/// multiplication, with dimensionless rational scalars.
pub struct PolyProduct<'a> {
    pub ring: &'a GradedPolyRing,
    pub max_degree: u32,
}

impl DimAlgebra for PolyProduct<'_> {
    type Scalar = Q;
    type Elem = Poly;

    fn dim(&self, a: &Poly) -> Dim {
        a.dim.clone()
    }

    fn add(&self, a: &Poly, b: &Poly) -> Result<Poly> {
        self.ring.add(a, b)
    }

    fn neg(&self, a: &Poly) -> Poly {
        self.ring.neg(a)
    }

    fn is_zero(&self, a: &Poly) -> bool {
        a.is_zero()
    }

    fn mul(&self, a: &Poly, b: &Poly) -> Result<Poly> {
        Ok(self.ring.mul(a, b))
    }

    fn mu(&self, d: &Dim, e: &Dim) -> Dim {
        self.ring.product_of(d, e)
    }

    fn scalar_mul(&self, r: &Q, s: &Q) -> Q {
        r * s
    }

    fn act(&self, r: &Q, a: &Poly) -> Poly {
        self.ring.scale(r, a)
    }

    fn act_dim(&self, g: &Dim, d: &Dim) -> Dim {
        g.plus(d)
    }

    fn scalar_dim(&self, _: &Q) -> Dim {
        self.ring.identity_dim()
    }

    fn sample(&self, rng: &mut dyn RngCore) -> Poly {
        self.ring.sample(self.max_degree, rng)
    }

    fn sample_like(&self, like: &Poly, rng: &mut dyn RngCore) -> Poly {
        self.ring.sample_in(&like.dim, self.max_degree, rng)
    }

    fn sample_scalar(&self, rng: &mut dyn RngCore) -> Q {
        ratio(rng.gen_range(-6..=6), rng.gen_range(1..=4))
    }

    fn describe(&self, a: &Poly) -> String {
        self.ring.display(a)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{bilinear_check, property_check, Property};
    use crate::rational::int;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    pub(crate) fn qp() -> GradedPolyRing {
        GradedPolyRing::unshifted(&[("q", Dim::scalar(1)), ("p", Dim::scalar(-1))]).unwrap()
    }

    #[test]
    fn dimensions_add_under_product() {
        let r = qp();
        let q = r.var(0);
        let p = r.var(1);
        assert_eq!(r.mul(&q, &p).dim, Dim::scalar(0));
        assert_eq!(r.pow(&q, 3).dim, Dim::scalar(3));
        assert!(r.add(&q, &p).is_err());
        let shifted = GradedPolyRing::new(vec!["x".into()], vec![Dim::scalar(2)], Dim::scalar(1)).unwrap();
        let x = shifted.var(0);
        assert_eq!(shifted.one().dim, Dim::scalar(-1));
        assert_eq!(shifted.mul(&x, &x).dim, Dim::scalar(5));
        assert_eq!(shifted.mul(&shifted.one(), &x), x);
    }

    #[test]
    fn parse_and_display() {
        let r = qp();
        let f = r.parse("2 q^2 p - 3/4*q + q").unwrap();
        assert_eq!(f.dim, Dim::scalar(1));
        assert_eq!(r.display(&f), "2*q^2*p + 1/4*q");
        assert_eq!(r.parse(&r.display(&f)).unwrap(), f);
        assert_eq!(r.parse("(q + q)^2 p").unwrap(), r.scale(&int(4), &r.parse("q^2 p").unwrap()));
        assert!(r.parse("q + p").is_err());
        match r.parse("q + x") {
            Err(AlgebraError::Parse { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("{other:?}"),
        }
        assert!(r.parse("q - q").unwrap().is_zero());
    }

    #[test]
    fn derivatives() {
        let r = qp();
        let f = r.parse("q^2 p").unwrap();
        assert_eq!(r.deriv(&f, 0), r.parse("2 q p").unwrap());
        assert_eq!(r.deriv(&r.one(), 0).dim, Dim::scalar(-1));
    }

    #[test]
    fn product_is_bilinear_commutative_associative() {
        let r = qp();
        let m = PolyProduct { ring: &r, max_degree: 3 };
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let rep = bilinear_check(&m, 200, &mut rng);
        assert!(rep.all_passed(), "{rep}");
        for prop in [Property::Symmetric, Property::Associative] {
            let rep = property_check(&m, prop, 200, &mut rng);
            assert!(rep.all_passed(), "{rep}");
        }
        assert!(!property_check(&m, Property::Antisymmetric, 50, &mut rng).all_passed());
    }

    #[test]
    fn slices() {
        let r = qp();
        let s = r.slices_up_to(4);
        assert_eq!(s[&Dim::scalar(0)].len(), 3); // 1, qp, q²p²
        assert_eq!(s[&Dim::scalar(4)].len(), 1);
        assert_eq!(r.monomials_up_to(2).len(), 6);
    }
}
