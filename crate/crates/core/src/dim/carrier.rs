//! Slice carriers: the ordinary abelian groups that sit over each dimension.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use rand::Rng;

use crate::error::{AlgebraError, Result};
use crate::rational::{int, Q};

/// The abelian group structure of one slice.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Carrier {
    Rational,
    RationalVec(usize),
    Cyclic(u64),
    /// Integer formal sums over the named generators.
    Free(Vec<String>),
    Trivial,
    Sum(Box<Carrier>, Box<Carrier>),
}

/// A slice element.
#[derive(Clone, PartialEq, Eq, Debug, PartialOrd, Ord)]
pub enum Value {
    Rat(Q),
    Vec(Vec<Q>),
    Mod(u64),
    Formal(BTreeMap<String, BigInt>),
    Zero,
    Pair(Box<Value>, Box<Value>),
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Rat(q) => write!(f, "{q}"),
            Value::Vec(v) => {
                let parts: Vec<String> = v.iter().map(|q| q.to_string()).collect();
                write!(f, "[{}]", parts.join(", "))
            }
            Value::Mod(r) => write!(f, "{r}"),
            Value::Formal(terms) => {
                if terms.is_empty() {
                    return write!(f, "0");
                }
                let parts: Vec<String> = terms.iter().map(|(g, c)| format!("{c}{g}")).collect();
                write!(f, "{}", parts.join(" + "))
            }
            Value::Zero => write!(f, "0"),
            Value::Pair(a, b) => write!(f, "({a}, {b})"),
        }
    }
}

impl Value {
    pub fn rat(q: Q) -> Self {
        Value::Rat(q)
    }

    pub fn int(n: i64) -> Self {
        Value::Rat(int(n))
    }

    pub fn formal(terms: &[(&str, i64)]) -> Self {
        let mut m = BTreeMap::new();
        for (g, c) in terms {
            *m.entry(g.to_string()).or_insert_with(BigInt::zero) += BigInt::from(*c);
        }
        m.retain(|_, c: &mut BigInt| !c.is_zero());
        Value::Formal(m)
    }

    pub fn pair(a: Value, b: Value) -> Self {
        Value::Pair(Box::new(a), Box::new(b))
    }
}

fn mismatch(c: &Carrier, v: &Value) -> AlgebraError {
    AlgebraError::DomainMismatch(format!("value {v} does not belong to carrier {c:?}"))
}

impl Carrier {
    pub fn free<S: Into<String>>(gens: impl IntoIterator<Item = S>) -> Self {
        Carrier::Free(gens.into_iter().map(Into::into).collect())
    }

    pub fn sum(a: Carrier, b: Carrier) -> Self {
        Carrier::Sum(Box::new(a), Box::new(b))
    }

    pub fn zero(&self) -> Value {
        match self {
            Carrier::Rational => Value::Rat(Q::zero()),
            Carrier::RationalVec(n) => Value::Vec(vec![Q::zero(); *n]),
            Carrier::Cyclic(_) => Value::Mod(0),
            Carrier::Free(_) => Value::Formal(BTreeMap::new()),
            Carrier::Trivial => Value::Zero,
            Carrier::Sum(a, b) => Value::pair(a.zero(), b.zero()),
        }
    }

    pub fn contains(&self, v: &Value) -> bool {
        match (self, v) {
            (Carrier::Rational, Value::Rat(_)) | (Carrier::Trivial, Value::Zero) => true,
            (Carrier::RationalVec(n), Value::Vec(x)) => x.len() == *n,
            (Carrier::Cyclic(n), Value::Mod(r)) => r < n,
            (Carrier::Free(gens), Value::Formal(t)) => {
                t.iter().all(|(g, c)| !c.is_zero() && gens.contains(g))
            }
            (Carrier::Sum(a, b), Value::Pair(x, y)) => a.contains(x) && b.contains(y),
            _ => false,
        }
    }

    pub fn check(&self, v: &Value) -> Result<()> {
        if self.contains(v) {
            Ok(())
        } else {
            Err(mismatch(self, v))
        }
    }

    pub fn add(&self, a: &Value, b: &Value) -> Result<Value> {
        Ok(match (self, a, b) {
            (Carrier::Rational, Value::Rat(x), Value::Rat(y)) => Value::Rat(x + y),
            (Carrier::RationalVec(n), Value::Vec(x), Value::Vec(y)) if x.len() == *n && y.len() == *n => {
                Value::Vec(x.iter().zip(y).map(|(p, q)| p + q).collect())
            }
            (Carrier::Cyclic(n), Value::Mod(x), Value::Mod(y)) => Value::Mod((x + y) % n),
            (Carrier::Free(_), Value::Formal(x), Value::Formal(y)) => {
                let mut m = x.clone();
                for (g, c) in y {
                    *m.entry(g.clone()).or_insert_with(BigInt::zero) += c;
                }
                m.retain(|_, c| !c.is_zero());
                Value::Formal(m)
            }
            (Carrier::Trivial, Value::Zero, Value::Zero) => Value::Zero,
            (Carrier::Sum(ca, cb), Value::Pair(x1, y1), Value::Pair(x2, y2)) => {
                Value::pair(ca.add(x1, x2)?, cb.add(y1, y2)?)
            }
            _ => return Err(mismatch(self, if self.contains(a) { b } else { a })),
        })
    }

    pub fn neg(&self, a: &Value) -> Result<Value> {
        self.scale_int(a, &BigInt::from(-1))
    }

    /// `k · a` for an integer `k`, the Z-module structure every slice has.
    pub fn scale_int(&self, a: &Value, k: &BigInt) -> Result<Value> {
        Ok(match (self, a) {
            (Carrier::Rational, Value::Rat(x)) => Value::Rat(x * Q::from_integer(k.clone())),
            (Carrier::RationalVec(_), Value::Vec(x)) => {
                let k = Q::from_integer(k.clone());
                Value::Vec(x.iter().map(|q| q * &k).collect())
            }
            (Carrier::Cyclic(n), Value::Mod(x)) => {
                let r = (BigInt::from(*x) * k).mod_floor(&BigInt::from(*n));
                Value::Mod(r.to_u64().expect("residue fits"))
            }
            (Carrier::Free(_), Value::Formal(t)) => {
                let mut m: BTreeMap<String, BigInt> =
                    t.iter().map(|(g, c)| (g.clone(), c * k)).collect();
                m.retain(|_, c| !c.is_zero());
                Value::Formal(m)
            }
            (Carrier::Trivial, Value::Zero) => Value::Zero,
            (Carrier::Sum(ca, cb), Value::Pair(x, y)) => Value::pair(ca.scale_int(x, k)?, cb.scale_int(y, k)?),
            _ => return Err(mismatch(self, a)),
        })
    }

    pub fn is_zero(&self, a: &Value) -> bool {
        *a == self.zero()
    }

    pub fn is_finite(&self) -> bool {
        match self {
            Carrier::Cyclic(_) | Carrier::Trivial => true,
            Carrier::Free(g) => g.is_empty(),
            Carrier::RationalVec(0) => true,
            Carrier::Sum(a, b) => a.is_finite() && b.is_finite(),
            _ => false,
        }
    }

    /// All elements of a finite carrier.
    pub fn elements(&self) -> Option<Vec<Value>> {
        match self {
            Carrier::Cyclic(n) => Some((0..*n).map(Value::Mod).collect()),
            Carrier::Trivial => Some(vec![Value::Zero]),
            Carrier::Free(g) if g.is_empty() => Some(vec![self.zero()]),
            Carrier::RationalVec(0) => Some(vec![self.zero()]),
            Carrier::Sum(a, b) => {
                let (xs, ys) = (a.elements()?, b.elements()?);
                Some(
                    xs.iter()
                        .flat_map(|x| ys.iter().map(move |y| Value::pair(x.clone(), y.clone())))
                        .collect(),
                )
            }
            _ => None,
        }
    }

    pub fn order(&self) -> Option<u64> {
        self.elements().map(|e| e.len() as u64)
    }

    /// A random element with small numerators and denominators.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Value {
        let q = |rng: &mut R| {
            let n: i64 = rng.gen_range(-9..=9);
            let d: i64 = rng.gen_range(1..=4);
            Q::new(n.into(), d.into())
        };
        match self {
            Carrier::Rational => Value::Rat(q(rng)),
            Carrier::RationalVec(n) => Value::Vec((0..*n).map(|_| q(rng)).collect()),
            Carrier::Cyclic(n) => Value::Mod(rng.gen_range(0..*n)),
            Carrier::Free(gens) => {
                let mut m = BTreeMap::new();
                for g in gens {
                    let c: i64 = rng.gen_range(-3..=3);
                    if c != 0 {
                        m.insert(g.clone(), BigInt::from(c));
                    }
                }
                Value::Formal(m)
            }
            Carrier::Trivial => Value::Zero,
            Carrier::Sum(a, b) => Value::pair(a.sample(rng), b.sample(rng)),
        }
    }

    /// A deterministic probe list: all elements when finite, otherwise a
    /// handful of structured elements.
    pub fn probes(&self) -> Vec<Value> {
        if let Some(all) = self.elements() {
            return all;
        }
        match self {
            Carrier::Rational => [0, 1, -1, 2].iter().map(|&n| Value::int(n)).chain([Value::Rat(Q::new(3.into(), 7.into()))]).collect(),
            Carrier::RationalVec(n) => {
                let mut out = vec![self.zero()];
                for i in 0..*n {
                    let mut v = vec![Q::zero(); *n];
                    v[i] = int(1 + i as i64);
                    out.push(Value::Vec(v));
                }
                out.push(Value::Vec((0..*n).map(|i| Q::new((2 * i as i64 - 1).into(), 3.into())).collect()));
                out
            }
            Carrier::Free(gens) => {
                let mut out = vec![self.zero()];
                for g in gens {
                    out.push(Value::formal(&[(g.as_str(), 1)]));
                    out.push(Value::formal(&[(g.as_str(), -2)]));
                }
                if gens.len() > 1 {
                    out.push(Value::formal(&[(gens[0].as_str(), 3), (gens[1].as_str(), -1)]));
                }
                out
            }
            Carrier::Sum(a, b) => {
                let (xs, ys) = (a.probes(), b.probes());
                xs.iter().flat_map(|x| ys.iter().map(move |y| Value::pair(x.clone(), y.clone()))).collect()
            }
            _ => vec![self.zero()],
        }
    }

    /// The ordinary tensor product of two slice carriers.
    pub fn tensor(&self, other: &Carrier) -> Result<Carrier> {
        use Carrier::*;
        Ok(match (self, other) {
            (Trivial, _) | (_, Trivial) => Trivial,
            (Free(g), _) if g.is_empty() => Trivial,
            (_, Free(g)) if g.is_empty() => Trivial,
            (RationalVec(0), _) | (_, RationalVec(0)) => Trivial,
            (Rational, Rational) => Rational,
            (Rational, RationalVec(n)) | (RationalVec(n), Rational) => RationalVec(*n),
            (RationalVec(n), RationalVec(m)) => RationalVec(n * m),
            (Cyclic(m), Cyclic(n)) => match m.gcd(n) {
                1 => Trivial,
                g => Cyclic(g),
            },
            // Q is divisible and Z/n is torsion.
            (Rational | RationalVec(_), Cyclic(_)) | (Cyclic(_), Rational | RationalVec(_)) => Trivial,
            (Free(s), Free(t)) => Free(
                s.iter().flat_map(|a| t.iter().map(move |b| format!("{a}⊗{b}"))).collect(),
            ),
            (Free(s), Rational) | (Rational, Free(s)) => RationalVec(s.len()),
            (Free(s), RationalVec(n)) | (RationalVec(n), Free(s)) => RationalVec(s.len() * n),
            _ => {
                return Err(AlgebraError::Unsupported(format!(
                    "tensor product of carriers {self:?} and {other:?}"
                )))
            }
        })
    }

    /// The image of the pure tensor `a ⊗ b` in [`Carrier::tensor`].
    pub fn tensor_value(&self, a: &Value, other: &Carrier, b: &Value) -> Result<Value> {
        self.check(a)?;
        other.check(b)?;
        let target = self.tensor(other)?;
        use Carrier::*;
        Ok(match (self, a, other, b) {
            _ if target == Trivial => Value::Zero,
            (Rational, Value::Rat(x), Rational, Value::Rat(y)) => Value::Rat(x * y),
            (Rational, Value::Rat(x), RationalVec(_), Value::Vec(v))
            | (RationalVec(_), Value::Vec(v), Rational, Value::Rat(x)) => {
                Value::Vec(v.iter().map(|q| q * x).collect())
            }
            (RationalVec(_), Value::Vec(u), RationalVec(_), Value::Vec(v)) => {
                Value::Vec(u.iter().flat_map(|x| v.iter().map(move |y| x * y)).collect())
            }
            (Cyclic(_), Value::Mod(x), Cyclic(_), Value::Mod(y)) => {
                let Cyclic(g) = target else { unreachable!() };
                Value::Mod((x % g) * (y % g) % g)
            }
            (Free(s), Value::Formal(x), Free(t), Value::Formal(y)) => {
                let mut m = BTreeMap::new();
                for a in s {
                    for b in t {
                        if let (Some(p), Some(q)) = (x.get(a), y.get(b)) {
                            m.insert(format!("{a}⊗{b}"), p * q);
                        }
                    }
                }
                Value::Formal(m)
            }
            (Free(s), Value::Formal(x), _, _) => {
                let w = match b {
                    Value::Rat(q) => vec![q.clone()],
                    Value::Vec(v) => v.clone(),
                    _ => unreachable!(),
                };
                Value::Vec(
                    s.iter()
                        .flat_map(|g| {
                            let c = Q::from_integer(x.get(g).cloned().unwrap_or_default());
                            w.iter().map(move |q| &c * q).collect::<Vec<_>>()
                        })
                        .collect(),
                )
            }
            (_, _, Free(t), Value::Formal(y)) => {
                let w = match a {
                    Value::Rat(q) => vec![q.clone()],
                    Value::Vec(v) => v.clone(),
                    _ => unreachable!(),
                };
                Value::Vec(
                    w.iter()
                        .flat_map(|q| {
                            t.iter()
                                .map(|g| q * Q::from_integer(y.get(g).cloned().unwrap_or_default()))
                                .collect::<Vec<_>>()
                        })
                        .collect(),
                )
            }
            _ => unreachable!("tensor carrier computed above"),
        })
    }

    /// Coordinates of a rational-vector-like value.
    pub(crate) fn coords(&self, v: &Value) -> Option<Vec<Q>> {
        match (self, v) {
            (Carrier::Rational, Value::Rat(q)) => Some(vec![q.clone()]),
            (Carrier::RationalVec(_), Value::Vec(x)) => Some(x.clone()),
            _ => None,
        }
    }
}

/// Whether a rational is an integer, returning it.
pub(crate) fn as_integer(q: &Q) -> Option<BigInt> {
    q.is_integer().then(|| q.to_integer())
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    #[test]
    fn slice_arithmetic() {
        let c = Carrier::Cyclic(4);
        assert_eq!(c.add(&Value::Mod(3), &Value::Mod(2)).unwrap(), Value::Mod(1));
        assert_eq!(c.neg(&Value::Mod(1)).unwrap(), Value::Mod(3));
        let f = Carrier::free(["x", "y"]);
        let x = Value::formal(&[("x", 1)]);
        assert_eq!(f.add(&x, &x).unwrap(), Value::formal(&[("x", 2)]));
        let three_x = Value::formal(&[("x", 3)]);
        assert_eq!(f.add(&three_x, &f.neg(&three_x).unwrap()).unwrap(), f.zero());
        assert!(Carrier::Rational.add(&Value::int(1), &Value::Mod(1)).is_err());
    }

    #[test]
    fn tensor_of_rationals_is_bilinear() {
        let q = Carrier::Rational;
        let a = q.tensor_value(&Value::int(2), &q, &Value::int(3)).unwrap();
        let b = q.tensor_value(&Value::int(6), &q, &Value::int(1)).unwrap();
        assert_eq!(a, b);
        assert_eq!(q.tensor(&q).unwrap(), Carrier::Rational);
    }

    #[test]
    fn tensor_of_coprime_cyclics_is_trivial() {
        // Oracle: Z/2 ⊗ Z/3 is generated by 1⊗1 with 2(1⊗1) = 0 and 3(1⊗1) = 0,
        // hence 1⊗1 = 3(1⊗1) - 2(1⊗1) = 0.
        assert_eq!(Carrier::Cyclic(2).tensor(&Carrier::Cyclic(3)).unwrap(), Carrier::Trivial);
        assert_eq!(Carrier::Cyclic(4).tensor(&Carrier::Cyclic(6)).unwrap(), Carrier::Cyclic(2));
        let v = Carrier::Cyclic(4).tensor_value(&Value::Mod(3), &Carrier::Cyclic(6), &Value::Mod(5)).unwrap();
        assert_eq!(v, Value::Mod(1));
    }

    #[test]
    fn tensor_with_trivial_is_trivial() {
        for c in [Carrier::Rational, Carrier::Cyclic(5), Carrier::RationalVec(2), Carrier::free(["x"])] {
            assert_eq!(c.tensor(&Carrier::Trivial).unwrap(), Carrier::Trivial);
        }
        assert_eq!(Carrier::Rational.tensor(&Carrier::Cyclic(7)).unwrap(), Carrier::Trivial);
    }

    #[test]
    fn free_tensor_rational_is_coefficient_vector() {
        let f = Carrier::free(["x", "y"]);
        let v = f
            .tensor_value(&Value::formal(&[("x", 2), ("y", -1)]), &Carrier::Rational, &Value::Rat(ratio(1, 2)))
            .unwrap();
        assert_eq!(v, Value::Vec(vec![int(1), ratio(-1, 2)]));
    }
}
