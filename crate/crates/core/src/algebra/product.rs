use rand::RngCore;

use crate::dim::Dim;
use crate::error::{AlgebraError, Result};
use crate::report::{LawCheck, Report};

use super::poisson::DimPoisson;
use super::poly::{GradedPolyRing, Poly};

/// The tensor product of two dimensioned Poisson algebras, realized as the
/// polynomial algebra on both sets of generators with the two brackets
/// side by side and cross brackets zero.
///
/// `a ⊗ b` is the product of the embedded factors, and the bracket obeys
/// `{a⊗b, a'⊗b'} = {a,a'} ⊗ bb' + aa' ⊗ {b,b'}`.
#[derive(Clone, Debug)]
pub struct PoissonProduct {
    poisson: DimPoisson,
    left: DimPoisson,
    right: DimPoisson,
    /// Zero padding `(before, after)` that lifts factor dimensions into the
    /// product's dimension group.
    left_pad: (usize, usize),
    right_pad: (usize, usize),
}

fn pad(d: &Dim, (before, after): (usize, usize)) -> Dim {
    Dim(vec![0; before]).pair(d).pair(&Dim(vec![0; after]))
}

fn pad_poly(f: &Poly, by: (usize, usize)) -> Poly {
    Poly { dim: pad(&f.dim, by), terms: f.terms.clone() }
}

fn lift(p: &DimPoisson, by: (usize, usize)) -> Result<DimPoisson> {
    let r = p.ring();
    let ring = GradedPolyRing::new(
        r.names().to_vec(),
        r.gen_dims().iter().map(|g| pad(g, by)).collect(),
        pad(r.product_dim(), by),
    )?;
    let n = r.nvars();
    let pairs = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).map(|(i, j)| (i, j, pad_poly(p.constant(i, j), by))).collect();
    DimPoisson::from_pairs_unchecked(&ring, pad(p.bracket_dim(), by), pairs)
}

/// `A ⊗ B` for Poisson algebras over the same dimension group. With
/// product dimensions `p, q` and bracket dimensions `b, c`, the product
/// needs `b + q = p + c`; it then has product dimension `p + q` and bracket
/// dimension `b + q`. Generator names must be distinct.
pub fn poisson_product_homo(a: &DimPoisson, b: &DimPoisson) -> Result<PoissonProduct> {
    build(a.clone(), b.clone(), (0, 0), (0, 0))
}

/// `A ⊗ B` for `A` graded by `Z^k` and `B` by `Z^l`, over `Z^(k+l)`. Both
/// factors lift into the product group, where the balancing condition
/// becomes `b_A = p_A` and `b_B = p_B`.
pub fn poisson_product_hetero(a: &DimPoisson, b: &DimPoisson) -> Result<PoissonProduct> {
    let (k, l) = (a.ring().rank(), b.ring().rank());
    build(lift(a, (0, l))?, lift(b, (k, 0))?, (0, l), (k, 0))
}

fn build(a: DimPoisson, b: DimPoisson, left_pad: (usize, usize), right_pad: (usize, usize)) -> Result<PoissonProduct> {
    let (ra, rb) = (a.ring(), b.ring());
    if ra.rank() != rb.rank() {
        return Err(AlgebraError::Invalid(format!("factors graded by Z^{} and Z^{}", ra.rank(), rb.rank())));
    }
    let (p, q) = (ra.product_dim(), rb.product_dim());
    let (bb, c) = (a.bracket_dim(), b.bracket_dim());
    if bb.plus(q) != p.plus(c) {
        return Err(AlgebraError::Invalid(format!(
            "brackets do not balance: b + q = {} but p + c = {}",
            bb.plus(q),
            p.plus(c)
        )));
    }
    if let Some(clash) = ra.names().iter().find(|n| rb.index(n).is_some()) {
        return Err(AlgebraError::Invalid(format!("generator {clash} appears in both factors")));
    }
    let names = ra.names().iter().chain(rb.names()).cloned().collect();
    let gens = ra.gen_dims().iter().map(|g| g.minus(q)).chain(rb.gen_dims().iter().map(|g| g.minus(p))).collect();
    let ring = GradedPolyRing::new(names, gens, p.plus(q))?;
    let shell = PoissonProduct { poisson: DimPoisson::canonical(1), left: a.clone(), right: b.clone(), left_pad, right_pad };
    let (na, nb) = (ra.nvars(), rb.nvars());
    let mut pairs = Vec::new();
    for i in 0..na {
        for j in 0..na {
            pairs.push((i, j, shell.embed_lifted(&ring, &a, 0, q, a.constant(i, j))?));
        }
    }
    for i in 0..nb {
        for j in 0..nb {
            pairs.push((na + i, na + j, shell.embed_lifted(&ring, &b, na, p, b.constant(i, j))?));
        }
    }
    let poisson = DimPoisson::new(&ring, bb.plus(q), pairs)?;
    Ok(PoissonProduct { poisson, ..shell })
}

impl PoissonProduct {
    pub fn poisson(&self) -> &DimPoisson {
        &self.poisson
    }

    /// The factors as seen inside the product's dimension group.
    pub fn factors(&self) -> (&DimPoisson, &DimPoisson) {
        (&self.left, &self.right)
    }

    fn embed_lifted(&self, target: &GradedPolyRing, factor: &DimPoisson, offset: usize, other_p: &Dim, f: &Poly) -> Result<Poly> {
        let images: Vec<Poly> = (0..factor.ring().nvars()).map(|i| target.var(offset + i)).collect();
        factor.ring().substitute(f, target, &images, f.dim.minus(other_p))
    }

    /// `a ↦ a ⊗ 1`, for `a` in the left factor as originally graded.
    pub fn embed_left(&self, a: &Poly) -> Result<Poly> {
        let q = self.right.ring().product_dim();
        self.embed_lifted(self.poisson.ring(), &self.left, 0, q, &pad_poly(a, self.left_pad))
    }

    /// `b ↦ 1 ⊗ b`, for `b` in the right factor as originally graded.
    pub fn embed_right(&self, b: &Poly) -> Result<Poly> {
        let p = self.left.ring().product_dim();
        let offset = self.left.ring().nvars();
        self.embed_lifted(self.poisson.ring(), &self.right, offset, p, &pad_poly(b, self.right_pad))
    }

    /// `a ⊗ b = (a ⊗ 1) * (1 ⊗ b)`.
    pub fn tensor(&self, a: &Poly, b: &Poly) -> Result<Poly> {
        Ok(self.poisson.ring().mul(&self.embed_left(a)?, &self.embed_right(b)?))
    }

    /// Checks the bracket formula on random pure tensors, together with the
    /// embeddings being multiplicative and bracket-preserving and the
    /// dimension of `a ⊗ b` being `dim a + dim b`.
    pub fn verify(&self, count: usize, max_degree: u32, rng: &mut dyn RngCore) -> Report {
        let r = self.poisson.ring();
        let (ra, rb) = (self.left.ring(), self.right.ring());
        let mut formula = LawCheck::new("bracket of pure tensors");
        let mut mult = LawCheck::new("embeddings multiplicative");
        let mut brk = LawCheck::new("embeddings preserve brackets");
        let mut dims = LawCheck::new("dimension of pure tensors");
        let unpad = |f: &Poly, by: (usize, usize)| Poly { dim: Dim(f.dim.0[by.0..f.dim.0.len() - by.1].to_vec()), terms: f.terms.clone() };
        for _ in 0..count {
            let (a, a2) = (unpad(&ra.sample(max_degree, rng), self.left_pad), unpad(&ra.sample(max_degree, rng), self.left_pad));
            let (b, b2) = (unpad(&rb.sample(max_degree, rng), self.right_pad), unpad(&rb.sample(max_degree, rng), self.right_pad));
            let (la, la2) = (pad_poly(&a, self.left_pad), pad_poly(&a2, self.left_pad));
            let (lb, lb2) = (pad_poly(&b, self.right_pad), pad_poly(&b2, self.right_pad));
            let w = || format!("a={}, a'={}, b={}, b'={}", ra.display(&la), ra.display(&la2), rb.display(&lb), rb.display(&lb2));
            let (Ok(t), Ok(t2)) = (self.tensor(&a, &b), self.tensor(&a2, &b2)) else {
                formula.record(false, w);
                continue;
            };
            dims.record(t.dim == la.dim.plus(&lb.dim), w);
            let lhs = self.poisson.bracket(&t, &t2);
            let unl = |f: &Poly| unpad(f, self.left_pad);
            let unr = |f: &Poly| unpad(f, self.right_pad);
            let rhs = (|| {
                let x = self.tensor(&unl(&self.left.bracket(&la, &la2)), &unr(&rb.mul(&lb, &lb2)))?;
                let y = self.tensor(&unl(&ra.mul(&la, &la2)), &unr(&self.right.bracket(&lb, &lb2)))?;
                r.add(&x, &y)
            })();
            formula.record(rhs.as_ref() == Ok(&lhs), w);
            let m = (|| Ok::<_, AlgebraError>(r.mul(&self.embed_left(&a)?, &self.embed_left(&a2)?) == self.embed_left(&unl(&ra.mul(&la, &la2)))?))();
            mult.record(m.unwrap_or(false), w);
            let bk = (|| {
                let left = self.poisson.bracket(&self.embed_left(&a)?, &self.embed_left(&a2)?) == self.embed_left(&unl(&self.left.bracket(&la, &la2)))?;
                let right = self.poisson.bracket(&self.embed_right(&b)?, &self.embed_right(&b2)?) == self.embed_right(&unr(&self.right.bracket(&lb, &lb2)))?;
                let cross = self.poisson.bracket(&self.embed_left(&a)?, &self.embed_right(&b)?).is_zero();
                Ok::<_, AlgebraError>(left && right && cross)
            })();
            brk.record(bk.unwrap_or(false), w);
        }
        let mut report = Report::new("Poisson tensor product");
        for law in [formula, mult, brk, dims] {
            report.push(law.finish());
        }
        report
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::poisson::poisson_axiom_report;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn renamed(p: &DimPoisson, suffix: &str) -> DimPoisson {
        let r = p.ring();
        let ring = GradedPolyRing::new(
            r.names().iter().map(|n| format!("{n}{suffix}")).collect(),
            r.gen_dims().to_vec(),
            r.product_dim().clone(),
        )
        .unwrap();
        let n = r.nvars();
        let pairs = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).map(|(i, j)| (i, j, p.constant(i, j).clone())).collect();
        DimPoisson::new(&ring, p.bracket_dim().clone(), pairs).unwrap()
    }

    /// A one-generator-pair algebra over `Z` with chosen `p` and `b`:
    /// `{x, y} = x * y`, which is Poisson for any choice of dimensions.
    fn xy(names: [&str; 2], p: i64, b: i64) -> DimPoisson {
        let ring = GradedPolyRing::new(names.iter().map(|s| s.to_string()).collect(), vec![Dim::scalar(1), Dim::scalar(2)], Dim::scalar(p)).unwrap();
        let c = ring.mul(&ring.var(0), &ring.var(1));
        let c = Poly { dim: Dim::scalar(b + 3), terms: c.terms };
        // {x, y} must sit over b + 3; x * y sits over p + 3.
        assert_eq!(p, b, "x*y only has the right dimension when b = p");
        DimPoisson::new(&ring, Dim::scalar(b), vec![(0, 1, c)]).unwrap()
    }

    #[test]
    fn two_canonicals_make_four() {
        let a = renamed(&DimPoisson::canonical(1), "1");
        let b = renamed(&DimPoisson::canonical(1), "2");
        let prod = poisson_product_homo(&a, &b).unwrap();
        let four = DimPoisson::canonical(2);
        let r = prod.poisson().ring();
        assert_eq!(r.names(), ["q1", "p1", "q2", "p2"]);
        // Compare {x, y} against the 4-generator canonical bracket by name.
        for x in r.names() {
            for y in r.names() {
                let got = prod.poisson().bracket(&r.var_named(x).unwrap(), &r.var_named(y).unwrap());
                let f = four.ring();
                let want = four.bracket(&f.var_named(x).unwrap(), &f.var_named(y).unwrap());
                assert_eq!(got.terms, want.terms, "{{{x}, {y}}}");
                assert_eq!(got.dim, want.dim);
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let rep = prod.verify(60, 2, &mut rng);
        assert!(rep.all_passed(), "{rep}");
        assert!(poisson_axiom_report(prod.poisson(), 40, 2, &mut rng).all_passed());
    }

    #[test]
    fn trivial_factor() {
        let ring = GradedPolyRing::new(vec!["z".into()], vec![Dim::scalar(0)], Dim::scalar(0)).unwrap();
        let t = DimPoisson::new(&ring, Dim::scalar(0), vec![]).unwrap();
        let prod = poisson_product_homo(&DimPoisson::canonical(1), &t).unwrap();
        let r = prod.poisson().ring();
        assert_eq!(prod.poisson().bracket(&r.var(0), &r.var(1)), r.one());
        assert!(prod.poisson().bracket(&r.var(0), &r.var(2)).is_zero());
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        assert!(prod.verify(50, 2, &mut rng).all_passed());
    }

    #[test]
    fn balancing_condition() {
        // (p, b, q, c) = (0, 1, 0, 0): b + q = 1 but p + c = 0.
        let ring = GradedPolyRing::new(vec!["u".into()], vec![Dim::scalar(1)], Dim::scalar(0)).unwrap();
        let a = DimPoisson::new(&ring, Dim::scalar(1), vec![]).unwrap();
        let err = poisson_product_homo(&a, &renamed(&DimPoisson::canonical(1), "2")).unwrap_err();
        assert!(err.to_string().contains("b + q = (1) but p + c = (0)"), "{err}");
        // (1, 2, 3, 4): 2 + 3 = 1 + 4, bracket dimension 5.
        let ring = GradedPolyRing::new(vec!["u".into()], vec![Dim::scalar(1)], Dim::scalar(1)).unwrap();
        let a = DimPoisson::new(&ring, Dim::scalar(2), vec![]).unwrap();
        let ring = GradedPolyRing::new(vec!["v".into()], vec![Dim::scalar(1)], Dim::scalar(3)).unwrap();
        let b = DimPoisson::new(&ring, Dim::scalar(4), vec![]).unwrap();
        let prod = poisson_product_homo(&a, &b).unwrap();
        assert_eq!(prod.poisson().bracket_dim(), &Dim::scalar(5));
        assert_eq!(prod.poisson().product_dim(), &Dim::scalar(4));
        assert!(poisson_product_homo(&a, &a).is_err());
    }

    #[test]
    fn hetero_product() {
        let a = xy(["x", "y"], 2, 2);
        let b = renamed(&DimPoisson::canonical(1), "2");
        let prod = poisson_product_hetero(&a, &b).unwrap();
        let r = prod.poisson().ring();
        assert_eq!(r.rank(), 2);
        assert_eq!(prod.poisson().product_dim(), &Dim::new([2, 0]));
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let rep = prod.verify(60, 2, &mut rng);
        assert!(rep.all_passed(), "{rep}");
        assert!(poisson_axiom_report(prod.poisson(), 40, 2, &mut rng).all_passed());
        // x ⊗ p2 sits over (1, 0) + (0, -1).
        let t = prod.tensor(&a.ring().var(0), &b.ring().var(1)).unwrap();
        assert_eq!(t.dim, Dim::new([1, -1]));
        // b ≠ p in one factor breaks the lifted balance.
        let ring = GradedPolyRing::new(vec!["u".into()], vec![Dim::scalar(1)], Dim::scalar(0)).unwrap();
        let bad = DimPoisson::new(&ring, Dim::scalar(1), vec![]).unwrap();
        assert!(poisson_product_hetero(&bad, &b).is_err());
    }
}
