use num_traits::One;
use rand::{Rng, RngCore};

use crate::dim::Dim;
use crate::error::{AlgebraError, Result};
use crate::rational::{ratio, Q};
use crate::report::{LawCheck, Report};

use super::poly::{GradedPolyRing, Poly};
use super::DimAlgebra;

/// `(A, *_p, {,}_b)` on a graded polynomial ring, with the bracket extended
/// from structure constants `{x_i, x_j}` as a biderivation:
/// `{f, g} = Σ ∂f/∂x_i * ∂g/∂x_j * {x_i, x_j}`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DimPoisson {
    ring: GradedPolyRing,
    b: Dim,
    table: Vec<Vec<Poly>>,
}

impl DimPoisson {
    /// Builds the bracket from the given pairs; a pair given one way is
    /// mirrored with a sign, unlisted pairs bracket to zero. Fails unless
    /// dimensions, antisymmetry and Jacobi on generators all hold.
    pub fn new(ring: &GradedPolyRing, b: Dim, constants: Vec<(usize, usize, Poly)>) -> Result<Self> {
        let p = Self::from_pairs_unchecked(ring, b, constants)?;
        let rep = p.structure_report();
        if let Some(f) = rep.failures().next() {
            return Err(AlgebraError::Invalid(format!("not a Poisson bracket: {} fails at {}", f.law, f.witness.as_deref().unwrap_or("?"))));
        }
        Ok(p)
    }

    /// Like [`DimPoisson::new`] but keeps whatever the pairs say, for
    /// diagnosing broken brackets. Only the shape and arity are checked.
    pub fn from_pairs_unchecked(ring: &GradedPolyRing, b: Dim, constants: Vec<(usize, usize, Poly)>) -> Result<Self> {
        let n = ring.nvars();
        if b.arity() != ring.rank() {
            return Err(AlgebraError::Invalid(format!("bracket dimension {b} is outside Z^{}", ring.rank())));
        }
        let mut table: Vec<Vec<Option<Poly>>> = vec![vec![None; n]; n];
        let given: Vec<(usize, usize)> = constants.iter().map(|(i, j, _)| (*i, *j)).collect();
        for (i, j, f) in constants {
            if i >= n || j >= n {
                return Err(AlgebraError::Invalid(format!("generator index out of range in pair ({i}, {j})")));
            }
            if !given.contains(&(j, i)) {
                table[j][i] = Some(ring.neg(&f));
            }
            table[i][j] = Some(f);
        }
        let table = table
            .into_iter()
            .enumerate()
            .map(|(i, row)| {
                row.into_iter()
                    .enumerate()
                    .map(|(j, f)| f.unwrap_or_else(|| ring.zero(b.plus(ring.gen_dim(i)).plus(ring.gen_dim(j)))))
                    .collect()
            })
            .collect();
        Ok(DimPoisson { ring: ring.clone(), b, table })
    }

    /// `Q[q_1..q_k, p_1..p_k]` with `g_q = +1`, `g_p = −1` in `Z`,
    /// `p = b = 0` and `{q_i, p_j} = δ_ij`. Names are `q, p` when `k = 1`.
    pub fn canonical(k: usize) -> Self {
        let names: Vec<String> = if k == 1 {
            vec!["q".into(), "p".into()]
        } else {
            (1..=k).map(|i| format!("q{i}")).chain((1..=k).map(|i| format!("p{i}"))).collect()
        };
        let dims = (0..2 * k).map(|i| Dim::scalar(if i < k { 1 } else { -1 })).collect();
        let ring = GradedPolyRing::new(names, dims, Dim::scalar(0)).expect("valid names");
        let pairs = (0..k).map(|i| (i, k + i, ring.one())).collect();
        Self::new(&ring, Dim::scalar(0), pairs).expect("canonical bracket")
    }

    pub fn ring(&self) -> &GradedPolyRing {
        &self.ring
    }

    pub fn bracket_dim(&self) -> &Dim {
        &self.b
    }

    pub fn product_dim(&self) -> &Dim {
        self.ring.product_dim()
    }

    pub fn constant(&self, i: usize, j: usize) -> &Poly {
        &self.table[i][j]
    }

    /// `{f, g}`, of dimension `b + dim f + dim g`.
    pub fn bracket(&self, f: &Poly, g: &Poly) -> Poly {
        let r = &self.ring;
        let mut out = r.zero(self.b.plus(&f.dim).plus(&g.dim));
        let n = r.nvars();
        let dg: Vec<Poly> = (0..n).map(|j| r.deriv(g, j)).collect();
        for i in 0..n {
            let df = r.deriv(f, i);
            if df.is_zero() {
                continue;
            }
            for (j, dgj) in dg.iter().enumerate() {
                if dgj.is_zero() || self.table[i][j].is_zero() {
                    continue;
                }
                let t = r.mul(&r.mul(&df, dgj), &self.table[i][j]);
                out = r.add(&out, &t).expect("all terms share b + dim f + dim g");
            }
        }
        out
    }

    /// Dimensions of the structure constants, antisymmetry of the table and
    /// Jacobi on generator triples.
    pub fn structure_report(&self) -> Report {
        let r = &self.ring;
        let n = r.nvars();
        let mut dims = LawCheck::new("structure constant dimensions");
        let mut anti = LawCheck::new("antisymmetric on generators");
        let mut jac = LawCheck::new("Jacobi on generators");
        for i in 0..n {
            for j in 0..n {
                let want = self.b.plus(r.gen_dim(i)).plus(r.gen_dim(j));
                let c = &self.table[i][j];
                dims.record(c.dim == want, || format!("{{{}, {}}} has dimension {} not {want}", r.name(i), r.name(j), c.dim));
                let ok = r.add(c, &self.table[j][i]).is_ok_and(|s| s.is_zero());
                anti.record(ok, || format!("{{{}, {}}} = {}, {{{}, {}}} = {}", r.name(i), r.name(j), r.display(c), r.name(j), r.name(i), r.display(&self.table[j][i])));
            }
        }
        if !dims.failed() {
            for i in 0..n {
                for j in 0..n {
                    for k in 0..n {
                        let (x, y, z) = (r.var(i), r.var(j), r.var(k));
                        let ok = self.jacobiator(&x, &y, &z).is_ok_and(|s| s.is_zero());
                        jac.record(ok, || format!("({}, {}, {})", r.name(i), r.name(j), r.name(k)));
                    }
                }
            }
        }
        let mut report = Report::new("Poisson structure constants");
        for law in [dims, anti, jac] {
            report.push(law.finish());
        }
        report
    }

    pub fn jacobiator(&self, f: &Poly, g: &Poly, h: &Poly) -> Result<Poly> {
        let r = &self.ring;
        let x = self.bracket(f, &self.bracket(g, h));
        let y = self.bracket(g, &self.bracket(h, f));
        let z = self.bracket(h, &self.bracket(f, g));
        r.add(&r.add(&x, &y)?, &z)
    }
}

/// The dimensions of `{a, b*c}`, `{a, b}*c` and `b*{a, c}` for `a, b, c` of
/// dimensions `g, h, k`; they coincide because `Z^k` is commutative.
pub fn leibniz_dimensions(bracket: &Dim, product: &Dim, g: &Dim, h: &Dim, k: &Dim) -> [Dim; 3] {
    let pr = |x: &Dim, y: &Dim| product.plus(x).plus(y);
    let br = |x: &Dim, y: &Dim| bracket.plus(x).plus(y);
    [br(g, &pr(h, k)), pr(&br(g, h), k), pr(h, &br(g, k))]
}

/// Antisymmetry, Jacobi, Leibniz and `dim {f, g} = b + dim f + dim g` for
/// the bracket, and commutativity and associativity of the product, on
/// `count` random homogeneous triples of degree at most `max_degree`. All
/// identities must vanish exactly.
pub fn poisson_axiom_report(p: &DimPoisson, count: usize, max_degree: u32, rng: &mut dyn RngCore) -> Report {
    let r = p.ring();
    let mut anti = LawCheck::new("antisymmetry");
    let mut jacobi = LawCheck::new("Jacobi");
    let mut leibniz = LawCheck::new("Leibniz");
    let mut dims = LawCheck::new("dimension of bracket");
    let mut comm = LawCheck::new("product commutative");
    let mut assoc = LawCheck::new("product associative");
    for _ in 0..count {
        let f = r.sample(max_degree, rng);
        let g = r.sample(max_degree, rng);
        let h = r.sample(max_degree, rng);
        let w = || format!("f={}, g={}, h={}", r.display(&f), r.display(&g), r.display(&h));
        let fg = p.bracket(&f, &g);
        anti.record(r.add(&fg, &p.bracket(&g, &f)).is_ok_and(|s| s.is_zero()), w);
        jacobi.record(p.jacobiator(&f, &g, &h).is_ok_and(|s| s.is_zero()), w);
        let lhs = p.bracket(&f, &r.mul(&g, &h));
        let rhs = r.add(&r.mul(&fg, &h), &r.mul(&g, &p.bracket(&f, &h)));
        leibniz.record(rhs.as_ref() == Ok(&lhs), w);
        dims.record(fg.dim == p.bracket_dim().plus(&f.dim).plus(&g.dim), w);
        comm.record(r.mul(&f, &g) == r.mul(&g, &f), w);
        assoc.record(r.mul(&r.mul(&f, &g), &h) == r.mul(&f, &r.mul(&g, &h)), w);
    }
    let mut report = Report::new("dimensioned Poisson algebra");
    for law in [anti, jacobi, leibniz, dims, comm, assoc] {
        report.push(law.finish());
    }
    report
}

/// Membership in the ideal generated by the generators in `killed`: every
/// monomial must contain one of them.
pub fn in_monomial_ideal(f: &Poly, killed: &[usize]) -> bool {
    f.terms.keys().all(|m| killed.iter().any(|&k| m[k] > 0))
}

/// Drops the monomials lying in the ideal generated by `killed`.
pub fn reduce_monomial(f: &Poly, killed: &[usize]) -> Poly {
    let terms = f.terms.iter().filter(|(m, _)| !killed.iter().any(|&k| m[k] > 0)).map(|(m, c)| (m.clone(), c.clone())).collect();
    Poly { dim: f.dim.clone(), terms }
}

/// Is the ideal generated by `killed` a coisotrope: closed under `*` by
/// anything and under `{,}` with itself, on generators and random probes.
pub fn coisotrope_check(p: &DimPoisson, killed: &[usize], count: usize, rng: &mut dyn RngCore) -> Report {
    let r = p.ring();
    let mut ideal = LawCheck::new("ideal for the product");
    let mut gens = LawCheck::new("bracket closed on generators");
    let mut probes = LawCheck::new("bracket closed on probes");
    for &k in killed {
        for &l in killed {
            let c = p.bracket(&r.var(k), &r.var(l));
            gens.record(in_monomial_ideal(&c, killed), || format!("{{{}, {}}} = {}", r.name(k), r.name(l), r.display(&c)));
        }
    }
    if !killed.is_empty() {
        for _ in 0..count {
            let f = r.sample(2, rng);
            let g = r.sample(2, rng);
            let k = killed[rng.gen_range(0..killed.len())];
            let l = killed[rng.gen_range(0..killed.len())];
            let fi = r.mul(&f, &r.var(k));
            ideal.record(in_monomial_ideal(&fi, killed), || r.display(&fi));
            let gi = r.mul(&g, &r.var(l));
            let c = p.bracket(&fi, &gi);
            probes.record(in_monomial_ideal(&c, killed), || format!("{{{}, {}}}", r.display(&fi), r.display(&gi)));
        }
    }
    let mut report = Report::new("coisotrope");
    for law in [ideal, gens, probes] {
        report.push(law.finish());
    }
    report
}

/// The bracket of a Poisson algebra as a bilinear multiplication.
pub struct BracketAlgebra<'a> {
    pub poisson: &'a DimPoisson,
    pub max_degree: u32,
}

impl DimAlgebra for BracketAlgebra<'_> {
    type Scalar = Q;
    type Elem = Poly;

    fn dim(&self, a: &Poly) -> Dim {
        a.dim.clone()
    }

    fn add(&self, a: &Poly, b: &Poly) -> Result<Poly> {
        self.poisson.ring.add(a, b)
    }

    fn neg(&self, a: &Poly) -> Poly {
        self.poisson.ring.neg(a)
    }

    fn is_zero(&self, a: &Poly) -> bool {
        a.is_zero()
    }

    fn mul(&self, a: &Poly, b: &Poly) -> Result<Poly> {
        Ok(self.poisson.bracket(a, b))
    }

    fn mu(&self, d: &Dim, e: &Dim) -> Dim {
        self.poisson.b.plus(d).plus(e)
    }

    fn scalar_mul(&self, r: &Q, s: &Q) -> Q {
        r * s
    }

    fn act(&self, r: &Q, a: &Poly) -> Poly {
        self.poisson.ring.scale(r, a)
    }

    fn act_dim(&self, g: &Dim, d: &Dim) -> Dim {
        g.plus(d)
    }

    fn scalar_dim(&self, _: &Q) -> Dim {
        self.poisson.ring.identity_dim()
    }

    fn sample(&self, rng: &mut dyn RngCore) -> Poly {
        self.poisson.ring.sample(self.max_degree, rng)
    }

    fn sample_like(&self, like: &Poly, rng: &mut dyn RngCore) -> Poly {
        self.poisson.ring.sample_in(&like.dim, self.max_degree, rng)
    }

    fn sample_scalar(&self, rng: &mut dyn RngCore) -> Q {
        if rng.gen_ratio(1, 8) {
            Q::one()
        } else {
            ratio(rng.gen_range(-6..=6), rng.gen_range(1..=4))
        }
    }

    fn describe(&self, a: &Poly) -> String {
        self.poisson.ring.display(a)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{bilinear_check, property_check, Property};
    use crate::rational::int;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn canonical_brackets() {
        let p = DimPoisson::canonical(1);
        let r = p.ring();
        let q2 = r.parse("q^2").unwrap();
        assert_eq!(p.bracket(&q2, &r.var(1)), r.parse("2 q").unwrap());
        assert_eq!(p.bracket(&r.var(0), &r.parse("p^2").unwrap()), r.parse("2 p").unwrap());
        let f = r.parse("q^2 p + 3 q").unwrap();
        assert!(p.bracket(&f, &f).is_zero());
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let rep = poisson_axiom_report(&p, 200, 3, &mut rng);
        assert!(rep.all_passed(), "{rep}");
    }

    #[test]
    fn bracket_as_bilinear_multiplication() {
        let p = DimPoisson::canonical(2);
        let m = BracketAlgebra { poisson: &p, max_degree: 3 };
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        assert!(bilinear_check(&m, 100, &mut rng).all_passed());
        for prop in [Property::Antisymmetric, Property::Jacobi] {
            let rep = property_check(&m, prop, 100, &mut rng);
            assert!(rep.all_passed(), "{rep}");
        }
    }

    #[test]
    fn broken_tables() {
        let ring = DimPoisson::canonical(1).ring().clone();
        // {q, p} = 1 and {p, q} = 1.
        let pairs = vec![(0, 1, ring.one()), (1, 0, ring.one())];
        assert!(DimPoisson::new(&ring, Dim::scalar(0), pairs.clone()).is_err());
        let broken = DimPoisson::from_pairs_unchecked(&ring, Dim::scalar(0), pairs).unwrap();
        let rep = broken.structure_report();
        assert!(rep.law("antisymmetric on generators").unwrap().witness.as_ref().unwrap().contains("{q, p}"));
        let m = BracketAlgebra { poisson: &broken, max_degree: 2 };
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        assert!(!property_check(&m, Property::Antisymmetric, 100, &mut rng).all_passed());
        // Wrong dimension for {q, p}.
        assert!(DimPoisson::new(&ring, Dim::scalar(0), vec![(0, 1, ring.var(0))]).is_err());
    }

    #[test]
    fn jacobi_violation_is_caught() {
        // so(3) passes; changing {y, z} and {x, z} breaks Jacobi at (x, y, z).
        let ring = GradedPolyRing::unshifted(&[("x", Dim::scalar(0)), ("y", Dim::scalar(0)), ("z", Dim::scalar(0))]).unwrap();
        let so3 = vec![(0, 1, ring.var(2)), (1, 2, ring.var(0)), (2, 0, ring.var(1))];
        let p = DimPoisson::new(&ring, Dim::scalar(0), so3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        assert!(poisson_axiom_report(&p, 100, 3, &mut rng).all_passed());
        let bad = vec![(0, 1, ring.var(2)), (1, 2, ring.var(2)), (0, 2, ring.scale(&int(2), &ring.var(0)))];
        assert!(DimPoisson::new(&ring, Dim::scalar(0), bad).is_err());
    }

    #[test]
    fn leibniz_dimensions_agree() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..500 {
            let v = |rng: &mut ChaCha8Rng| Dim::new((0..3).map(|_| rng.gen_range(-9..=9)).collect::<Vec<_>>());
            let (b, p, g, h, k) = (v(&mut rng), v(&mut rng), v(&mut rng), v(&mut rng), v(&mut rng));
            let [x, y, z] = leibniz_dimensions(&b, &p, &g, &h, &k);
            assert!(x == y && y == z);
        }
    }

    #[test]
    fn coisotropes() {
        let p = DimPoisson::canonical(1);
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        assert!(coisotrope_check(&p, &[0], 100, &mut rng).all_passed());
        let both = coisotrope_check(&p, &[0, 1], 100, &mut rng);
        assert!(!both.law("bracket closed on generators").unwrap().passed);
        assert!(coisotrope_check(&p, &[], 100, &mut rng).all_passed());
    }
}
