use serde::{Deserialize, Serialize};

use crate::algebra::{parse_poly, MultiPoly, PolyRing, Ring};
use crate::enumerate::{count_cusp_family, enum_curve_points_proj, EnumOptions};
use crate::error::{Error, Result};
use crate::globalfield::GlobalField;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ParamMap {
    /// `(a : b) -> (b^d : a^d : a b^(d-1))` plus `(0 : 1 : 0)`.
    Cusp,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EnumeratorHint {
    Direct,
    Parametrized(ParamMap),
}

/// A family of plane curves indexed by the degree. The template is a
/// polynomial in `x0, x1, x2` where `{d}`, `{d-1}`, `{d+2}` and so on are
/// replaced by the corresponding integer.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FamilySpec {
    pub name: String,
    pub template: String,
    pub hint: EnumeratorHint,
}

impl FamilySpec {
    pub fn cusp() -> Self {
        FamilySpec {
            name: "cusp".into(),
            template: "x1*x0^{d-1} - x2^{d}".into(),
            hint: EnumeratorHint::Parametrized(ParamMap::Cusp),
        }
    }

    /// The line `x2 = 0`, a copy of `P^1`.
    pub fn projective_line() -> Self {
        FamilySpec { name: "p1".into(), template: "x2".into(), hint: EnumeratorHint::Direct }
    }

    pub fn conic() -> Self {
        FamilySpec { name: "conic".into(), template: "x0*x2 - x1^2".into(), hint: EnumeratorHint::Direct }
    }

    pub fn builtin(name: &str) -> Option<Self> {
        match name {
            "cusp" => Some(Self::cusp()),
            "p1" => Some(Self::projective_line()),
            "conic" => Some(Self::conic()),
            _ => None,
        }
    }

    pub fn user(name: &str, template: &str) -> Self {
        FamilySpec { name: name.into(), template: template.into(), hint: EnumeratorHint::Direct }
    }

    pub fn depends_on_d(&self) -> bool {
        self.template.contains('{')
    }

    pub fn instantiate(&self, d: u32) -> Result<String> {
        let mut out = String::new();
        let mut rest = self.template.as_str();
        while let Some(open) = rest.find('{') {
            out.push_str(&rest[..open]);
            let close = rest[open..]
                .find('}')
                .ok_or_else(|| Error::Config(format!("unbalanced brace in {:?}", self.template)))?;
            let expr: String = rest[open + 1..open + close].chars().filter(|c| !c.is_whitespace()).collect();
            out.push_str(&eval_offset(&expr, d)?.to_string());
            rest = &rest[open + close + 1..];
        }
        out.push_str(rest);
        Ok(out)
    }

    pub fn member<K: GlobalField>(&self, k: &K, d: u32) -> Result<MultiPoly<<K::Ints as Ring>::Elem>> {
        let ring = PolyRing::new(k.ints().clone(), 3);
        let f = parse_poly(&ring, &self.instantiate(d)?)?;
        if f.is_constant() || !f.is_homogeneous() {
            return Err(Error::Config(format!("family {} at d = {d} is not a plane curve", self.name)));
        }
        Ok(f)
    }

    /// Number of points of height at most `h` on the member of degree `d`.
    pub fn count<K: GlobalField>(&self, k: &K, d: u32, h: u64, budget: Option<u64>) -> Result<u64> {
        match self.hint {
            EnumeratorHint::Parametrized(ParamMap::Cusp) => {
                let side = k.ints_in_box(num_integer::Roots::nth_root(&h, d)).len() as u128;
                crate::enumerate::check_budget(side * side, budget)?;
                Ok(count_cusp_family(k, d, h))
            }
            EnumeratorHint::Direct => {
                let f = self.member(k, d)?;
                let opts = EnumOptions { budget, ..Default::default() };
                Ok(enum_curve_points_proj(k, &f, h, &opts)?.count)
            }
        }
    }
}

fn eval_offset(expr: &str, d: u32) -> Result<u32> {
    let bad = || Error::Config(format!("template placeholder {{{expr}}} is not d or d+-N"));
    let tail = expr.strip_prefix('d').ok_or_else(bad)?;
    let v = if tail.is_empty() {
        d as i64
    } else if let Some(n) = tail.strip_prefix('-') {
        d as i64 - n.parse::<i64>().map_err(|_| bad())?
    } else if let Some(n) = tail.strip_prefix('+') {
        d as i64 + n.parse::<i64>().map_err(|_| bad())?
    } else {
        return Err(bad());
    };
    u32::try_from(v).map_err(|_| Error::Config(format!("{{{expr}}} is negative at d = {d}")))
}
