use std::collections::BTreeMap;

use num_traits::Zero;
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dim::Dim;
use crate::error::{AlgebraError, Result};
use crate::linalg::{nullspace, EchelonBasis};
use crate::rational::{ratio, Q};
use crate::report::{LawCheck, Report};

use super::poisson::{coisotrope_check, in_monomial_ideal, reduce_monomial, DimPoisson};
use super::poly::{Mono, Poly};

/// `N(I)/I` for a monomial coisotrope `I = (x_k : k ∈ killed)`, computed
/// slice by slice on monomials of degree at most `cutoff`.
///
/// Since `{,}` is a biderivation, `n ∈ N(I)` exactly when `{n, x_k} ∈ I`
/// for every killed `k`; classes are represented by polynomials with no
/// monomial in `I`.
#[derive(Clone, Debug)]
pub struct Reduced {
    poisson: DimPoisson,
    killed: Vec<usize>,
    cutoff: u32,
    slices: BTreeMap<Dim, Vec<Poly>>,
}

pub fn poisson_reduce(p: &DimPoisson, killed: &[usize], cutoff: u32) -> Result<Reduced> {
    if cutoff < 1 {
        return Err(AlgebraError::Invalid("the degree cutoff must be at least 1".into()));
    }
    if let Some(&k) = killed.iter().find(|&&k| k >= p.ring().nvars()) {
        return Err(AlgebraError::Invalid(format!("generator index {k} out of range")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let rep = coisotrope_check(p, killed, 64, &mut rng);
    if let Some(f) = rep.failures().next() {
        return Err(AlgebraError::Invalid(format!("not a coisotrope: {} fails at {}", f.law, f.witness.as_deref().unwrap_or("?"))));
    }
    let r = p.ring();
    let mut slices = BTreeMap::new();
    for (dim, monos) in r.slices_up_to(cutoff) {
        let free: Vec<Mono> = monos.into_iter().filter(|m| !killed.iter().any(|&k| m[k] > 0)).collect();
        if free.is_empty() {
            continue;
        }
        // One row per (killed generator, surviving monomial of the bracket).
        let mut rows: BTreeMap<(usize, Mono), Vec<Q>> = BTreeMap::new();
        for (col, m) in free.iter().enumerate() {
            let f = r.monomial(m.clone(), Q::from_integer(1.into()));
            for &k in killed {
                let c = reduce_monomial(&p.bracket(&f, &r.var(k)), killed);
                for (mono, x) in c.terms {
                    rows.entry((k, mono)).or_insert_with(|| vec![Q::zero(); free.len()])[col] = x;
                }
            }
        }
        let rows: Vec<Vec<Q>> = rows.into_values().collect();
        let basis: Vec<Poly> = nullspace(&rows, free.len())
            .into_iter()
            .map(|v| r.poly(dim.clone(), free.iter().cloned().zip(v)).expect("slice monomials"))
            .collect();
        if !basis.is_empty() {
            slices.insert(dim, basis);
        }
    }
    Ok(Reduced { poisson: p.clone(), killed: killed.to_vec(), cutoff, slices })
}

impl Reduced {
    pub fn poisson(&self) -> &DimPoisson {
        &self.poisson
    }

    pub fn cutoff(&self) -> u32 {
        self.cutoff
    }

    pub fn killed(&self) -> &[usize] {
        &self.killed
    }

    /// Basis of each nonzero slice of `N(I)/I` up to the cutoff.
    pub fn slices(&self) -> &BTreeMap<Dim, Vec<Poly>> {
        &self.slices
    }

    pub fn total_rank(&self) -> usize {
        self.slices.values().map(Vec::len).sum()
    }

    pub fn in_idealizer(&self, n: &Poly) -> bool {
        let r = self.poisson.ring();
        self.killed.iter().all(|&k| in_monomial_ideal(&self.poisson.bracket(n, &r.var(k)), &self.killed))
    }

    /// `n ↦ n + I`, defined on `N(I)`.
    pub fn project(&self, n: &Poly) -> Result<Poly> {
        if !self.in_idealizer(n) {
            return Err(AlgebraError::Invalid(format!("{} is not in the idealizer", self.poisson.ring().display(n))));
        }
        Ok(reduce_monomial(n, &self.killed))
    }

    pub fn product(&self, a: &Poly, b: &Poly) -> Poly {
        reduce_monomial(&self.poisson.ring().mul(a, b), &self.killed)
    }

    /// `{n + I, m + I}' = {n, m} + I`.
    pub fn bracket(&self, a: &Poly, b: &Poly) -> Poly {
        reduce_monomial(&self.poisson.bracket(a, b), &self.killed)
    }

    /// A random class from the computed slices.
    pub fn sample(&self, rng: &mut dyn RngCore) -> Option<Poly> {
        if self.slices.is_empty() {
            return None;
        }
        let (_, basis) = self.slices.iter().nth(rng.gen_range(0..self.slices.len()))?;
        let r = self.poisson.ring();
        let mut out = r.zero(basis[0].dim.clone());
        for v in basis {
            out = r.add(&out, &r.scale(&ratio(rng.gen_range(-4..=4), rng.gen_range(1..=3)), v)).ok()?;
        }
        Some(out)
    }

    /// A random element of `I` over `dim`, of degree at most `degree`.
    fn sample_ideal(&self, dim: &Dim, degree: u32, rng: &mut dyn RngCore) -> Poly {
        let r = self.poisson.ring();
        let mut out = r.sample_in(dim, degree, rng);
        out.terms.retain(|m, _| self.killed.iter().any(|&k| m[k] > 0));
        out
    }

    /// Closure of `N(I)` under both operations, the bracket descending to
    /// classes (bracket-then-reduce against reduce-then-bracket with random
    /// `I` perturbations), the projection respecting `*`, and the Poisson
    /// identities on classes.
    pub fn axiom_report(&self, count: usize, rng: &mut dyn RngCore) -> Report {
        let r = self.poisson.ring();
        let mut closure = LawCheck::new("idealizer closed");
        let mut descends = LawCheck::new("bracket descends");
        let mut morphism = LawCheck::new("projection respects product");
        let mut anti = LawCheck::new("antisymmetry");
        let mut jacobi = LawCheck::new("Jacobi");
        let mut leibniz = LawCheck::new("Leibniz");
        for _ in 0..count {
            let (Some(a), Some(b), Some(c)) = (self.sample(rng), self.sample(rng), self.sample(rng)) else { break };
            let w = || format!("a={}, b={}, c={}", r.display(&a), r.display(&b), r.display(&c));
            let ab = self.poisson.bracket(&a, &b);
            closure.record(self.in_idealizer(&ab) && self.in_idealizer(&r.mul(&a, &b)), w);
            let (i, j) = (self.sample_ideal(&a.dim, self.cutoff, rng), self.sample_ideal(&b.dim, self.cutoff, rng));
            let (n, m) = (r.add(&a, &i).expect("same slice"), r.add(&b, &j).expect("same slice"));
            let via_reps = self.project(&self.poisson.bracket(&n, &m)).ok();
            descends.record(via_reps.as_ref() == Some(&self.bracket(&a, &b)), w);
            let prod = self.project(&r.mul(&n, &m)).ok();
            morphism.record(prod.as_ref() == Some(&self.product(&a, &b)), w);
            anti.record(r.add(&self.bracket(&a, &b), &self.bracket(&b, &a)).is_ok_and(|s| s.is_zero()), w);
            let jac = r
                .add(&self.bracket(&a, &self.bracket(&b, &c)), &self.bracket(&b, &self.bracket(&c, &a)))
                .and_then(|s| r.add(&s, &self.bracket(&c, &self.bracket(&a, &b))));
            jacobi.record(jac.is_ok_and(|s| s.is_zero()), w);
            let lhs = self.bracket(&a, &self.product(&b, &c));
            let rhs = r.add(&self.product(&self.bracket(&a, &b), &c), &self.product(&b, &self.bracket(&a, &c)));
            leibniz.record(rhs.as_ref() == Ok(&lhs), w);
        }
        let mut report = Report::new("reduced Poisson algebra");
        for law in [closure, descends, morphism, anti, jacobi, leibniz] {
            report.push(law.finish());
        }
        report
    }
}

/// Brute-force oracle: enumerate every polynomial of a slice with
/// coefficients in {−1, 0, 1}, keep those bracketing every `x_k·m` (for
/// monomials `m` of degree below the cutoff) into `I`, and span their
/// classes. Exponential; for tests only.
pub fn brute_force_idealizer(p: &DimPoisson, killed: &[usize], cutoff: u32) -> BTreeMap<Dim, EchelonBasis> {
    let r = p.ring();
    let ideal_elems: Vec<Poly> = r
        .monomials_up_to(cutoff.saturating_sub(1))
        .into_iter()
        .flat_map(|m| killed.iter().map(move |&k| (m.clone(), k)))
        .map(|(m, k)| r.mul(&r.monomial(m, Q::from_integer(1.into())), &r.var(k)))
        .collect();
    let mut out = BTreeMap::new();
    for (dim, monos) in r.slices_up_to(cutoff) {
        // Only the free coordinates matter for the class; monomials in I are
        // in N(I) already and drop out.
        let free: Vec<Mono> = monos.into_iter().filter(|m| !killed.iter().any(|&k| m[k] > 0)).collect();
        let mut span = EchelonBasis::span(free.len(), std::iter::empty());
        let total = 3usize.pow(free.len() as u32);
        for code in 0..total {
            let mut c = code;
            let coeffs: Vec<Q> = (0..free.len())
                .map(|_| {
                    let x = (c % 3) as i64 - 1;
                    c /= 3;
                    Q::from_integer(x.into())
                })
                .collect();
            let n = r.poly(dim.clone(), free.iter().cloned().zip(coeffs.clone())).expect("slice");
            if ideal_elems.iter().all(|i| in_monomial_ideal(&p.bracket(&n, i), killed)) {
                span.insert(coeffs);
            }
        }
        if span.rank() > 0 {
            out.insert(dim, span);
        }
    }
    out
}
