//! Fixed points, outer fixed points and weakly fixed points, all decided by
//! reduction to twisted conjugacy.
//!
//! Given `u` and `v` with `π(v) = 1`, let `ψ` be the type-I endomorphism
//! `a ↦ u a u^-1`, `t ↦ v`, put `z = u^-1 v u` and let `φ_z` be
//! `a ↦ a`, `t ↦ z`. Then `(g)ψ = u (g)φ_z u^-1` for every `g`, and a
//! conjugator `w` with `u^-1 = (wφ_z)^-1 a^α w` yields the fixed point
//! `w^-1 a w` of `ψ` inside the conjugacy class of `a`.

use serde::Serialize;

use crate::endo::Endo;
use crate::error::{Error, Result};
use crate::group::GroupElement;
use crate::nrat::NRational;
use crate::tcp::{decide_conj, decide_tcp, TcpInstance, TcpResult};

fn need_t_exponent(g: &GroupElement, want: i64, what: &str) -> Result<()> {
    if g.t_exponent() != want {
        return Err(Error::Precondition(format!(
            "{what} must have t-exponent {want}, got {g} with t-exponent {}",
            g.t_exponent()
        )));
    }
    Ok(())
}

/// The type-I endomorphism `a ↦ u a u^-1`, `t ↦ v`.
///
/// Since `u a u^-1 = a^{n^π(u)}`, this is `TypeI { n^π(u), β_v }` where
/// `v = a^{β_v} t`.
pub fn build_psi(u: &GroupElement, v: &GroupElement) -> Result<Endo> {
    need_t_exponent(v, 1, "the image of t")?;
    let ctx = u.ctx();
    let psi = Endo::type_i(ctx.n_pow(u.t_exponent()), v.alpha().clone());
    let a = ctx.a();
    if psi.apply(&a) != u.mul(&a).mul(&u.inv()) || psi.apply(&ctx.t()) != *v {
        return Err(Error::Internal(format!(
            "{psi} does not send a to u a u^-1 and t to v"
        )));
    }
    Ok(psi)
}

/// `φ_z`: `a ↦ a`, `t ↦ z`.
pub fn build_phi_z(z: &GroupElement) -> Result<Endo> {
    need_t_exponent(z, 1, "z")?;
    Ok(Endo::type_i(z.ctx().one(), z.alpha().clone()))
}

/// `z = u^-1 v u`.
pub fn twist_target(u: &GroupElement, v: &GroupElement) -> GroupElement {
    v.conj(u)
}

/// A fixed point of `ψ` found in the conjugacy class of `a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixInClass {
    /// `w` with `u^-1 = (wφ_z)^-1 a^α w`.
    pub witness: GroupElement,
    /// `w^-1 a w`.
    pub fixed: GroupElement,
    pub tcp: TcpResult,
}

/// Decides whether `u^-1 = (wφ_z)^-1 a^α w` has a solution `w` for the
/// given `α`, and on success returns the fixed point `w^-1 a w` of `ψ`.
///
/// ```
/// use bs1n::GroupContext;
/// use bs1n::fixpoint::fix_in_class_of_a;
///
/// let ctx = GroupContext::new(2).unwrap();
/// let found = fix_in_class_of_a(&ctx.a(), &ctx.t(), &ctx.int(-1)).unwrap().unwrap();
/// assert_eq!(found.fixed, ctx.a());
/// ```
pub fn fix_in_class_of_a(
    u: &GroupElement,
    v: &GroupElement,
    alpha: &NRational,
) -> Result<Option<FixInClass>> {
    need_t_exponent(u, 0, "u")?;
    need_t_exponent(v, 1, "v")?;
    let ctx = u.ctx();
    let psi = build_psi(u, v)?;
    let phi_z = build_phi_z(&twist_target(u, v))?;
    let inst = TcpInstance::new(ctx.a_pow(alpha.clone()), u.inv(), phi_z)?;
    let tcp = decide_tcp(&inst)?;
    let Some(w) = tcp.witness.clone() else {
        return Ok(None);
    };
    let fixed = ctx.a().conj(&w);
    if !psi.is_fixed(&fixed) {
        return Err(Error::Internal(format!(
            "{fixed} is not fixed by {psi} although u^-1 = (wφ_z)^-1 a^α w holds for w = {w}"
        )));
    }
    Ok(Some(FixInClass {
        witness: w,
        fixed,
        tcp,
    }))
}

/// Whether `(g)e` is conjugate to `g`.
pub fn is_outer_fixed(e: &Endo, g: &GroupElement) -> Result<TcpResult> {
    decide_conj(&e.apply(g), g)
}

/// Whether `(g)e` is conjugate to the fixed point `afix` of `e`.
pub fn is_weakly_fixed(e: &Endo, g: &GroupElement, afix: &GroupElement) -> Result<TcpResult> {
    if !e.is_fixed(afix) {
        return Err(Error::Precondition(format!("{afix} is not fixed by {e}")));
    }
    decide_conj(&e.apply(g), afix)
}

/// For `g = a^γ t^d` and `x = u^-1 v u = a^β' t`, the element
/// `a^{γ + geom(1,d) β'} t^d`, which satisfies `(g)ψ = u · it · u^-1`.
pub fn construction_image(u: &GroupElement, v: &GroupElement, g: &GroupElement) -> Result<GroupElement> {
    let x = twist_target(u, v);
    need_t_exponent(&x, 1, "u^-1 v u")?;
    let ctx = g.ctx();
    let d = g.t_exponent();
    let exp = g.alpha() + &(&ctx.geom(1, d) * x.alpha());
    Ok(ctx.element(exp, d))
}

/// What [`verify_prop48`] established for one instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Prop48Witness {
    /// `g' = (g1 φ_x) u^-1 g1^-1`, a conjugator from `h` to `afix` that
    /// satisfies `u^-1 = (g1 φ_x)^-1 g' g1`.
    #[serde(serialize_with = "ser_elem")]
    pub g_prime: GroupElement,
    /// `h = a^{γ + μβ'} t^d` for `g2 = a^γ t^d`.
    #[serde(serialize_with = "ser_elem")]
    pub image: GroupElement,
    /// The conjugator found by [`decide_conj`].
    #[serde(serialize_with = "ser_elem")]
    pub solver_conjugator: GroupElement,
    /// Whether the solver's conjugator satisfies the identity too. It need
    /// not: conjugators are only determined up to the centraliser of `h`.
    pub solver_satisfies_identity: bool,
}

fn ser_elem<S: serde::Serializer>(g: &GroupElement, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&g.to_string())
}

/// Checks the weakly-fixed-point identity for `ψ̃ : a ↦ u a u^-1, t ↦ v`.
///
/// If `(g1^-1 g2 g1)ψ̃ = g1^-1 afix g1` fails, returns `None`. Otherwise
/// `h = a^{γ+μβ'} t^d` must be conjugate to `afix`, and the conjugator
/// `g' = (g1 φ_x) u^-1 g1^-1` must carry `h` to `afix`; either failure is
/// an [`Error::Internal`].
pub fn verify_prop48(
    u: &GroupElement,
    v: &GroupElement,
    afix: &GroupElement,
    g1: &GroupElement,
    g2: &GroupElement,
) -> Result<Option<Prop48Witness>> {
    let psi = build_psi(u, v)?;
    let x = twist_target(u, v);
    let phi_x = build_phi_z(&x)?;
    if !psi.is_fixed(afix) {
        return Err(Error::Precondition(format!("{afix} is not fixed by {psi}")));
    }
    let lhs = psi.apply(&g2.conj(g1));
    if lhs != afix.conj(g1) {
        return Ok(None);
    }

    let h = construction_image(u, v, g2)?;
    if psi.apply(g2) != u.mul(&h).mul(&u.inv()) {
        return Err(Error::Internal(format!(
            "image of {g2} under {psi} is not u h u^-1 for h = {h}"
        )));
    }
    let conj = decide_conj(&h, afix)?;
    let Some(solver_g) = conj.witness else {
        return Err(Error::Internal(format!(
            "hypothesis holds but {h} is not conjugate to the fixed point {afix}"
        )));
    };

    let g1_phi = phi_x.apply(g1);
    let g_prime = g1_phi.mul(&u.inv()).mul(&g1.inv());
    if h.conj(&g_prime) != *afix {
        return Err(Error::Internal(format!(
            "g' = {g_prime} does not conjugate {h} to {afix}"
        )));
    }
    let identity = |gp: &GroupElement| g1_phi.inv().mul(gp).mul(g1) == u.inv();
    if !identity(&g_prime) {
        return Err(Error::Internal(format!(
            "u^-1 = (g1 φ_x)^-1 g' g1 fails for g' = {g_prime}"
        )));
    }
    Ok(Some(Prop48Witness {
        solver_satisfies_identity: identity(&solver_g),
        g_prime,
        image: h,
        solver_conjugator: solver_g,
    }))
}
