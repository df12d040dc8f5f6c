//! Endomorphisms of `BS(1,n)`.
//!
//! For `|n| >= 2` every endomorphism is one of two kinds:
//!
//! * type I, `a ↦ a^α`, `t ↦ a^β t` with `α ≠ 0`;
//! * type II, `a ↦ 1`, `t ↦ a^β t^c`.
//!
//! Maps act on the right: [`Endo::apply`] computes `(g)ψ`, and
//! [`Endo::compose`]`(e1, e2)` is "first `e1`, then `e2`".

use std::fmt;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{parse_err, Error, Result};
use crate::group::{GroupContext, GroupElement};
use crate::nrat::{geom, parse_int, NRational};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Endo {
    /// `a ↦ a^alpha`, `t ↦ a^beta t`; `alpha` is never zero.
    TypeI { alpha: NRational, beta: NRational },
    /// `a ↦ 1`, `t ↦ a^beta t^c`.
    TypeII { beta: NRational, c: i64 },
}

impl Endo {
    /// A type-I endomorphism. `alpha = 0` kills `a`, so that case comes back
    /// as the type-II map `t ↦ a^beta t`.
    pub fn type_i(alpha: NRational, beta: NRational) -> Endo {
        assert_eq!(alpha.base(), beta.base(), "parameters for different n");
        if alpha.is_zero() {
            Endo::TypeII { beta, c: 1 }
        } else {
            Endo::TypeI { alpha, beta }
        }
    }

    pub fn type_ii(beta: NRational, c: i64) -> Endo {
        Endo::TypeII { beta, c }
    }

    pub fn identity(ctx: GroupContext) -> Endo {
        Endo::TypeI {
            alpha: ctx.one(),
            beta: ctx.zero(),
        }
    }

    /// The inner automorphism `x ↦ g^-1 x g`. For `g = a^μ t^c` it sends
    /// `a ↦ a^{n^-c}` and `t ↦ a^{μ (n-1) n^-c} t`.
    pub fn inner(g: &GroupElement) -> Endo {
        let ctx = g.ctx();
        let c = g.t_exponent();
        let alpha = ctx.n_pow(-c);
        let beta = g.alpha().mul_int(&(ctx.n() - 1).into()).scale_pow(-c);
        Endo::TypeI { alpha, beta }
    }

    pub fn n(&self) -> i64 {
        match self {
            Endo::TypeI { alpha, .. } => alpha.base(),
            Endo::TypeII { beta, .. } => beta.base(),
        }
    }

    pub fn ctx(&self) -> GroupContext {
        GroupContext::new(self.n()).expect("endomorphism carries a valid n")
    }

    pub fn beta(&self) -> &NRational {
        match self {
            Endo::TypeI { beta, .. } | Endo::TypeII { beta, .. } => beta,
        }
    }

    pub fn is_type_i(&self) -> bool {
        matches!(self, Endo::TypeI { .. })
    }

    /// The image `(a^ν t^d)ψ`:
    ///
    /// * type I: `a^{να + geom(1,d) β} t^d`
    /// * type II: `a^{geom(c,d) β} t^{cd}`
    pub fn apply(&self, g: &GroupElement) -> GroupElement {
        let ctx = g.ctx();
        assert_eq!(ctx.n(), self.n(), "endomorphism and element for different n");
        let d = g.t_exponent();
        match self {
            Endo::TypeI { alpha, beta } => {
                let exp = &(g.alpha() * alpha) + &(&geom(1, d, ctx.n()) * beta);
                ctx.element(exp, d)
            }
            Endo::TypeII { beta, c } => {
                let exp = &geom(*c, d, ctx.n()) * beta;
                ctx.element(exp, c.checked_mul(d).expect("t-exponent overflow"))
            }
        }
    }

    /// The endomorphism `g ↦ ((g)first)second`.
    pub fn compose(first: &Endo, second: &Endo) -> Endo {
        assert_eq!(first.n(), second.n(), "endomorphisms for different n");
        let n = first.n();
        match (first, second) {
            (
                Endo::TypeI {
                    alpha: a1,
                    beta: b1,
                },
                Endo::TypeI {
                    alpha: a2,
                    beta: b2,
                },
            ) => Endo::type_i(a1 * a2, &(b1 * a2) + b2),
            (Endo::TypeII { c: c1, .. }, Endo::TypeII { beta: b2, c: c2 }) => {
                let mu = geom(*c2, *c1, n);
                Endo::TypeII {
                    beta: &mu * b2,
                    c: c1.checked_mul(*c2).expect("t-exponent overflow"),
                }
            }
            (
                Endo::TypeII { beta: b1, c: c1 },
                Endo::TypeI {
                    alpha: a2,
                    beta: b2,
                },
            ) => {
                let mu1 = geom(1, *c1, n);
                Endo::TypeII {
                    beta: &(b1 * a2) + &(&mu1 * b2),
                    c: *c1,
                }
            }
            (Endo::TypeI { .. }, second @ Endo::TypeII { .. }) => second.clone(),
        }
    }

    pub fn is_fixed(&self, g: &GroupElement) -> bool {
        self.apply(g) == *g
    }

    /// Renders the spec string accepted by [`parse_endo`].
    pub fn spec_string(&self) -> String {
        match self {
            Endo::TypeI { alpha, beta } => format!("I:alpha={alpha},beta={beta}"),
            Endo::TypeII { beta, c } => format!("II:beta={beta},c={c}"),
        }
    }
}

impl fmt::Display for Endo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.spec_string())
    }
}

/// `{"type":"I"|"II","alpha":…,"beta":…,"c":…}` with rationals as strings.
/// Type II reports `alpha = "0"` and type I reports `c = 1`.
impl Serialize for Endo {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Endo", 4)?;
        match self {
            Endo::TypeI { alpha, beta } => {
                st.serialize_field("type", "I")?;
                st.serialize_field("alpha", &alpha.to_string())?;
                st.serialize_field("beta", &beta.to_string())?;
                st.serialize_field("c", &1)?;
            }
            Endo::TypeII { beta, c } => {
                st.serialize_field("type", "II")?;
                st.serialize_field("alpha", "0")?;
                st.serialize_field("beta", &beta.to_string())?;
                st.serialize_field("c", c)?;
            }
        }
        st.end()
    }
}

/// Result of [`parse_endo`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParsedEndo {
    pub endo: Endo,
    /// Set when a type-I spec with `alpha = 0` was stored as type II.
    pub reclassified: bool,
}

/// Parses `id`, `inner:<word>`, `I:alpha=<rat>,beta=<rat>` or
/// `II:beta=<rat>,c=<int>`.
pub fn parse_endo(text: &str, ctx: GroupContext) -> Result<ParsedEndo> {
    let s = text.trim();
    let lead = text.len() - text.trim_start().len();
    let plain = |endo| {
        Ok(ParsedEndo {
            endo,
            reclassified: false,
        })
    };
    if s == "id" {
        return plain(Endo::identity(ctx));
    }
    if let Some(w) = s.strip_prefix("inner:") {
        let g = ctx
            .parse(w)
            .map_err(|e| shift(e, lead + "inner:".len()))?;
        return plain(Endo::inner(&g));
    }
    let (kind, rest, off) = if let Some(r) = s.strip_prefix("II:") {
        ("II", r, 3)
    } else if let Some(r) = s.strip_prefix("I:") {
        ("I", r, 2)
    } else {
        return Err(parse_err(lead, "expected `id`, `inner:`, `I:` or `II:`"));
    };
    let fields = parse_fields(rest, lead + off)?;
    let get = |name: &str| -> Result<&(usize, String)> {
        fields
            .iter()
            .find(|(k, _)| k == name)
            .map(|(_, v)| v)
            .ok_or_else(|| parse_err(lead + off, format!("missing field `{name}`")))
    };
    let expect_keys = |keys: &[&str]| -> Result<()> {
        for (k, (pos, _)) in &fields {
            if !keys.contains(&k.as_str()) {
                return Err(parse_err(*pos, format!("unexpected field `{k}`")));
            }
        }
        Ok(())
    };
    match kind {
        "I" => {
            expect_keys(&["alpha", "beta"])?;
            let (pa, va) = get("alpha")?;
            let (pb, vb) = get("beta")?;
            let alpha = crate::nrat::parse_rat_at(va, *pa, ctx.n())?;
            let beta = crate::nrat::parse_rat_at(vb, *pb, ctx.n())?;
            let reclassified = alpha.is_zero();
            Ok(ParsedEndo {
                endo: Endo::type_i(alpha, beta),
                reclassified,
            })
        }
        _ => {
            expect_keys(&["beta", "c"])?;
            let (pb, vb) = get("beta")?;
            let (pc, vc) = get("c")?;
            let beta = crate::nrat::parse_rat_at(vb, *pb, ctx.n())?;
            let c = parse_int(vc.trim(), *pc)?;
            let c = i64::try_from(c).map_err(|_| parse_err(*pc, "c out of range"))?;
            plain(Endo::type_ii(beta, c))
        }
    }
}

type Fields = Vec<(String, (usize, String))>;

fn parse_fields(text: &str, offset: usize) -> Result<Fields> {
    let mut out: Fields = Vec::new();
    let mut pos = offset;
    for part in text.split(',') {
        let (k, v) = part
            .split_once('=')
            .ok_or_else(|| parse_err(pos, "expected `key=value`"))?;
        let key = k.trim().to_string();
        if out.iter().any(|(existing, _)| *existing == key) {
            return Err(parse_err(pos, format!("duplicate field `{key}`")));
        }
        out.push((key, (pos + k.len() + 1, v.to_string())));
        pos += part.len() + 1;
    }
    Ok(out)
}

fn shift(e: Error, by: usize) -> Error {
    match e {
        Error::Parse { pos, msg } => Error::Parse { pos: pos + by, msg },
        other => other,
    }
}
