use std::collections::BTreeMap;
use std::path::Path;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::dim::{Dim, Dimensioned};
use crate::power::{Line, LineSystem, PowerElem, PowerRing};
use crate::rational::{parse_rational, pow, to_exact_string, Q};
use crate::ring::{Trivialization, UnitSection};

use super::{format_number, pretty_dims, Format, Quantity, QuantityError, UnitExpr};

/// The JSON form of a registry.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RegistryFile {
    pub base: Vec<String>,
    pub units: Vec<UnitEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct UnitEntry {
    pub symbol: String,
    pub dims: Vec<i64>,
    /// Exact rational, `"1/1000"` or `"0.001"`.
    pub factor: String,
}

/// Base dimensions, unit symbols with exact factors to the coherent units,
/// the power ring of the base lines and its coherent unit section.
#[derive(Clone, Debug)]
pub struct UnitRegistry {
    base: Vec<String>,
    units: BTreeMap<String, (Dim, Q)>,
    order: Vec<String>,
    ring: PowerRing,
    section: UnitSection<PowerElem>,
}

fn is_symbol(s: &str) -> bool {
    let mut cs = s.chars();
    cs.next().is_some_and(|c| c.is_alphabetic() || c == '_') && cs.all(|c| c.is_alphanumeric() || c == '_')
}

impl UnitRegistry {
    pub fn from_file(file: RegistryFile) -> Result<Self, QuantityError> {
        let bad = |m: String| Err(QuantityError::Registry(m));
        let k = file.base.len();
        if k == 0 {
            return bad("no base dimensions".into());
        }
        for (i, b) in file.base.iter().enumerate() {
            if file.base[..i].contains(b) {
                return bad(format!("base dimension `{b}` listed twice"));
            }
        }
        let mut units = BTreeMap::new();
        let mut order = Vec::new();
        for u in &file.units {
            if !is_symbol(&u.symbol) {
                return bad(format!("`{}` is not a valid unit symbol", u.symbol));
            }
            if units.contains_key(&u.symbol) {
                return bad(format!("duplicate unit symbol `{}`", u.symbol));
            }
            if u.dims.len() != k {
                return bad(format!("unit `{}` has {} exponents for {k} base dimensions", u.symbol, u.dims.len()));
            }
            let factor = parse_rational(&u.factor).map_err(|e| QuantityError::Registry(format!("unit `{}`: {e}", u.symbol)))?;
            if factor.is_zero() {
                return bad(format!("unit `{}` has a zero factor", u.symbol));
            }
            units.insert(u.symbol.clone(), (Dim(u.dims.clone()), factor));
            order.push(u.symbol.clone());
        }
        for (i, b) in file.base.iter().enumerate() {
            let mut e = vec![0; k];
            e[i] = 1;
            let coherent: Vec<&String> = order.iter().filter(|s| units[*s] == (Dim(e.clone()), Q::one())).collect();
            match coherent.len() {
                0 => return bad(format!("no coherent unit for `{b}`")),
                1 => {}
                _ => return bad(format!("several coherent units for `{b}`: {}", coherent.iter().map(|s| s.as_str()).collect::<Vec<_>>().join(", "))),
            }
        }
        let ring = PowerRing::new(LineSystem::new(file.base.iter().map(Line::new).collect()));
        let section = ring.unit_section(&vec![Q::one(); k]).map_err(|e| QuantityError::Registry(e.to_string()))?;
        Ok(UnitRegistry { base: file.base, units, order, ring, section })
    }

    pub fn from_json(src: &str) -> Result<Self, QuantityError> {
        let file: RegistryFile = serde_json::from_str(src).map_err(|e| {
            QuantityError::Registry(format!("line {}, column {}: {e}", e.line(), e.column()))
        })?;
        Self::from_file(file)
    }

    pub fn load(path: &Path) -> Result<Self, QuantityError> {
        let src = std::fs::read_to_string(path).map_err(|e| QuantityError::Registry(format!("{}: {e}", path.display())))?;
        Self::from_json(&src)
    }

    /// The registry shipped with the crate: length and time with
    /// `m, cm, L, s, min`.
    pub fn si_subset() -> Self {
        Self::from_json(include_str!("../../registries/si.json")).expect("bundled registry is valid")
    }

    pub fn base(&self) -> &[String] {
        &self.base
    }

    pub fn rank(&self) -> usize {
        self.base.len()
    }

    pub fn ring(&self) -> &PowerRing {
        &self.ring
    }

    /// Unit symbols in file order.
    pub fn symbols(&self) -> &[String] {
        &self.order
    }

    pub fn unit(&self, symbol: &str) -> Option<&(Dim, Q)> {
        self.units.get(symbol)
    }

    fn trivialization(&self) -> Trivialization<'_, PowerRing> {
        Trivialization::new(&self.ring, self.section.clone()).expect("power rings are fields over Z^k")
    }

    /// `r` coherent units over `d`.
    pub fn coherent(&self, r: Q, d: Dim) -> Result<PowerElem, QuantityError> {
        Ok(self.trivialization().forward(&Dimensioned::new(r, d))?)
    }

    /// The numerical value against the coherent units.
    pub fn coherent_value(&self, x: &PowerElem) -> Q {
        self.trivialization().backward(x).expect("power rings are fields over Z^k").value
    }

    /// Exponent vector and factor of a unit expression.
    pub fn resolve(&self, u: &UnitExpr) -> Result<(Dim, Q), QuantityError> {
        let mut d = Dim(vec![0; self.rank()]);
        let mut f = Q::one();
        for (s, e) in &u.0 {
            let (ud, uf) = self.units.get(s).ok_or_else(|| QuantityError::UnknownUnit { symbol: s.clone(), pos: 0 })?;
            d = d.plus(&ud.scaled(*e));
            f *= pow(uf, *e);
        }
        Ok((d, f))
    }

    /// The number shown in front of the quantity's display unit.
    pub fn display_value(&self, q: &Quantity) -> Result<Q, QuantityError> {
        let (_, f) = self.resolve(&q.unit)?;
        Ok(self.coherent_value(&q.value) / f)
    }

    pub fn format(&self, q: &Quantity, format: Format) -> Result<String, QuantityError> {
        let n = format_number(&self.display_value(q)?, format);
        Ok(match () {
            _ if q.unit.is_empty() => n,
            // `3/7 L` would read back as `3 / (7 L)`.
            _ if n.contains('/') => format!("({n}) {}", q.unit),
            _ => format!("{n} {}", q.unit),
        })
    }

    pub fn pretty(&self, d: &Dim) -> String {
        pretty_dims(d, &self.base)
    }

    /// One line per unit: symbol, dimension and factor.
    pub fn describe(&self) -> Vec<String> {
        self.order
            .iter()
            .map(|s| {
                let (d, f) = &self.units[s];
                format!("{s}: {} × {}", to_exact_string(f), self.pretty(d))
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    #[test]
    fn bundled_registry() {
        let r = UnitRegistry::si_subset();
        assert_eq!(r.rank(), 2);
        assert_eq!(r.unit("L"), Some(&(Dim::new([3, 0]), ratio(1, 1000))));
        assert_eq!(r.unit("min"), Some(&(Dim::new([0, 1]), Q::from_integer(60.into()))));
        assert_eq!(r.pretty(&Dim::new([3, -1])), "length³·time⁻¹");
        assert_eq!(r.pretty(&Dim::new([0, 0])), "dimensionless");
    }

    #[test]
    fn rejections() {
        let err = |s: &str| UnitRegistry::from_json(s).unwrap_err().to_string();
        assert!(err(r#"{"base":["length"],"units":[]}"#).contains("no coherent unit for `length`"));
        let dup = r#"{"base":["length"],"units":[{"symbol":"m","dims":[1],"factor":"1"},{"symbol":"m","dims":[1],"factor":"2"}]}"#;
        assert!(err(dup).contains("duplicate unit symbol `m`"));
        let zero = r#"{"base":["length"],"units":[{"symbol":"m","dims":[1],"factor":"1"},{"symbol":"z","dims":[1],"factor":"0"}]}"#;
        assert!(err(zero).contains("zero factor"));
        let arity = r#"{"base":["length"],"units":[{"symbol":"m","dims":[1,0],"factor":"1"}]}"#;
        assert!(err(arity).contains("2 exponents"));
        assert!(err("{\"base\": [\"length\"],\n \"units\": [,]}").contains("line 2"));
        let two = r#"{"base":["length"],"units":[{"symbol":"m","dims":[1],"factor":"1"},{"symbol":"n","dims":[1],"factor":"1"}]}"#;
        assert!(err(two).contains("several coherent units"));
    }
}
