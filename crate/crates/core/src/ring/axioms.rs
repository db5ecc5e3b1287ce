//! Law-by-law verification of dimensioned ring structures.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::report::{LawCheck, Report};

use super::DimRing;

/// One test instance: `a`, `a2`, `a3` share a slice; `b` and `c` are
/// arbitrary.
#[derive(Clone, Debug)]
pub struct Instance<E> {
    pub a: E,
    pub a2: E,
    pub a3: E,
    pub b: E,
    pub c: E,
}

/// How instances are drawn.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Plan {
    /// Every element triple of a finite ring, with every same-slice pair.
    Exhaustive,
    /// Triples from the deterministic probe set, capped at `limit`.
    Probes { limit: usize },
    /// `count` random instances from a seeded generator.
    Random { count: usize, seed: u64 },
}

impl Plan {
    /// Exhaustive when the ring is finite and small, probes otherwise.
    pub fn auto<R: DimRing>(ring: &R) -> Plan {
        match ring.elements() {
            Some(e) if e.len() <= 24 => Plan::Exhaustive,
            _ => Plan::Probes { limit: 20_000 },
        }
    }

    pub fn instances<R: DimRing>(&self, ring: &R) -> Vec<Instance<R::Elem>> {
        match *self {
            Plan::Exhaustive => match ring.elements() {
                Some(all) => exhaustive(ring, &all),
                None => Plan::Probes { limit: 20_000 }.instances(ring),
            },
            Plan::Probes { limit } => {
                let pool = ring.probes();
                from_pool(ring, &pool, limit)
            }
            Plan::Random { count, seed } => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                (0..count)
                    .map(|_| {
                        let a = ring.sample(&mut rng);
                        let a2 = same_slice_sample(ring, &a, &mut rng);
                        let a3 = same_slice_sample(ring, &a, &mut rng);
                        Instance { a, a2, a3, b: ring.sample(&mut rng), c: ring.sample(&mut rng) }
                    })
                    .collect()
            }
        }
    }
}

fn same_slice_sample<R: DimRing>(ring: &R, a: &R::Elem, rng: &mut ChaCha8Rng) -> R::Elem {
    let d = ring.dim(a);
    for _ in 0..64 {
        let x = ring.sample(rng);
        if ring.dim(&x) == d {
            return x;
        }
    }
    // Fall back to a multiple of `a`, which always lies in its slice.
    match ring.add(a, a) {
        Ok(x) => x,
        Err(_) => a.clone(),
    }
}

fn exhaustive<R: DimRing>(ring: &R, all: &[R::Elem]) -> Vec<Instance<R::Elem>> {
    let mut out = Vec::new();
    for a in all {
        let d = ring.dim(a);
        let slice: Vec<&R::Elem> = all.iter().filter(|x| ring.dim(x) == d).collect();
        for a2 in &slice {
            for a3 in &slice {
                for b in all {
                    for c in all {
                        out.push(Instance {
                            a: a.clone(),
                            a2: (*a2).clone(),
                            a3: (*a3).clone(),
                            b: b.clone(),
                            c: c.clone(),
                        });
                    }
                }
            }
        }
    }
    out
}

fn from_pool<R: DimRing>(ring: &R, pool: &[R::Elem], limit: usize) -> Vec<Instance<R::Elem>> {
    let mut out = Vec::new();
    'outer: for (i, a) in pool.iter().enumerate() {
        let d = ring.dim(a);
        let slice: Vec<&R::Elem> = pool.iter().filter(|x| ring.dim(x) == d).collect();
        for (j, b) in pool.iter().enumerate() {
            for (k, c) in pool.iter().enumerate() {
                let a2 = slice[(i + j) % slice.len()].clone();
                let a3 = slice[(i + 2 * k + 1) % slice.len()].clone();
                out.push(Instance { a: a.clone(), a2, a3, b: b.clone(), c: c.clone() });
                if out.len() >= limit {
                    break 'outer;
                }
            }
        }
    }
    if out.len() >= limit {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        out.shuffle(&mut rng);
    }
    out
}

/// Checks every dimensioned ring law on the given instances.
pub fn ring_axiom_report<R: DimRing>(ring: &R, subject: &str, instances: &[Instance<R::Elem>]) -> Report {
    let m = ring.monoid();
    let show = |x: &R::Elem| ring.describe(x);
    let eq = |x: &Option<R::Elem>, y: &Option<R::Elem>| x.is_some() && x == y;

    let mut add_assoc = LawCheck::new("addition associative");
    let mut add_comm = LawCheck::new("addition commutative");
    let mut add_zero = LawCheck::new("additive identity");
    let mut add_inv = LawCheck::new("additive inverse");
    let mut add_slice = LawCheck::new("addition stays in slice");
    let mut delta = LawCheck::new("dimension morphism");
    let mut assoc = LawCheck::new("multiplication associative");
    let mut left = LawCheck::new("left distributivity");
    let mut right = LawCheck::new("right distributivity");
    let mut absorb = LawCheck::new("absorbency");
    let mut unit = LawCheck::new("unitality");
    let mut comm = ring.is_commutative().then(|| LawCheck::new("multiplication commutative"));

    let one = ring.one();
    unit.record(ring.dim(&one) == m.identity(), || format!("dim(1) = {} is not the identity", ring.dim(&one)));

    for Instance { a, a2, a3, b, c } in instances {
        let da = ring.dim(a);
        let sum = |x: &R::Elem, y: &R::Elem| ring.add(x, y).ok();

        let s = sum(a, a2);
        add_slice.record(s.as_ref().map(|s| ring.dim(s) == da).unwrap_or(false), || {
            format!("{} + {} left slice {da}", show(a), show(a2))
        });
        let l = s.as_ref().and_then(|s| sum(s, a3));
        let r = sum(a2, a3).and_then(|t| sum(a, &t));
        add_assoc.record(eq(&l, &r), || format!("({} + {}) + {}", show(a), show(a2), show(a3)));
        add_comm.record(eq(&s, &sum(a2, a)), || format!("{} + {}", show(a), show(a2)));
        let zero = ring.zero(&da).ok();
        add_zero.record(zero.as_ref().and_then(|z| sum(a, z)).as_ref() == Some(a), || {
            format!("{} + 0_{da}", show(a))
        });
        add_inv.record(eq(&sum(a, &ring.neg(a)), &zero), || format!("{} + (-{})", show(a), show(a)));

        for (x, y) in [(a, b), (b, c), (a, c)] {
            let p = ring.mul(x, y);
            let want = m.combine_unchecked(&ring.dim(x), &ring.dim(y));
            delta.record(ring.dim(&p) == want, || {
                format!("dim({} * {}) = {} but expected {want}", show(x), show(y), ring.dim(&p))
            });
        }

        let l = ring.mul(&ring.mul(a, b), c);
        let r = ring.mul(a, &ring.mul(b, c));
        assoc.record(l == r, || format!("({} * {}) * {}", show(a), show(b), show(c)));

        let l = s.as_ref().map(|s| ring.mul(s, c));
        let r = sum(&ring.mul(a, c), &ring.mul(a2, c));
        left.record(eq(&l, &r), || format!("({} + {}) * {}", show(a), show(a2), show(c)));
        let l = s.as_ref().map(|s| ring.mul(c, s));
        let r = sum(&ring.mul(c, a), &ring.mul(c, a2));
        right.record(eq(&l, &r), || format!("{} * ({} + {})", show(c), show(a), show(a2)));

        if let Some(z) = &zero {
            let db = ring.dim(b);
            let zl = ring.zero(&m.combine_unchecked(&da, &db)).ok();
            let zr = ring.zero(&m.combine_unchecked(&db, &da)).ok();
            absorb.record(eq(&Some(ring.mul(z, b)), &zl), || format!("0_{da} * {}", show(b)));
            absorb.record(eq(&Some(ring.mul(b, z)), &zr), || format!("{} * 0_{da}", show(b)));
        }

        unit.record(ring.mul(&one, a) == *a && ring.mul(a, &one) == *a, || format!("1 * {}", show(a)));
        if let Some(cm) = comm.as_mut() {
            cm.record(ring.mul(a, b) == ring.mul(b, a), || format!("{} * {}", show(a), show(b)));
        }
    }

    let mut report = Report::new(subject);
    for law in [add_slice, add_assoc, add_comm, add_zero, add_inv, delta, assoc, left, right, absorb, unit] {
        report.push(law.finish());
    }
    if let Some(cm) = comm {
        report.push(cm.finish());
    }
    report
}

/// Checks that `f` is a morphism of dimensioned rings on the given probes:
/// additive within slices, multiplicative, unital, and compatible with a
/// dimension map `g` (`dim f(a) = g(dim a)`).
pub fn morphism_report<S: DimRing, T: DimRing>(
    src: &S,
    dst: &T,
    f: impl Fn(&S::Elem) -> Option<T::Elem>,
    g: impl Fn(&crate::dim::Dim) -> crate::dim::Dim,
    probes: &[S::Elem],
    subject: &str,
) -> Report {
    let show = |x: &S::Elem| src.describe(x);
    let mut defined = LawCheck::new("defined on probes");
    let mut dims = LawCheck::new("dimension compatible");
    let mut additive = LawCheck::new("additive where defined");
    let mut multiplicative = LawCheck::new("multiplicative");
    let mut unital = LawCheck::new("unital");

    let one = f(&src.one());
    unital.record(one.as_ref() == Some(&dst.one()), || "f(1) != 1".into());

    for x in probes {
        let fx = f(x);
        defined.record(fx.is_some(), || show(x));
        if let Some(fx) = &fx {
            dims.record(dst.dim(fx) == g(&src.dim(x)), || show(x));
        }
        for y in probes {
            let (Some(fx), Some(fy)) = (fx.as_ref(), f(y)) else { continue };
            if src.dim(x) == src.dim(y) {
                let lhs = src.add(x, y).ok().and_then(|s| f(&s));
                let rhs = dst.add(fx, &fy).ok();
                additive.record(lhs.is_some() && lhs == rhs, || format!("{} + {}", show(x), show(y)));
            }
            let lhs = f(&src.mul(x, y));
            multiplicative.record(lhs.as_ref() == Some(&dst.mul(fx, &fy)), || format!("{} * {}", show(x), show(y)));
        }
    }
    let mut report = Report::new(subject);
    for law in [defined, dims, additive, multiplicative, unital] {
        report.push(law.finish());
    }
    report
}
