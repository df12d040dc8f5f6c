//! Deciding `u ∼_ψ v`, i.e. whether `v = (gψ)^-1 u g` for some `g`.
//!
//! The instance is first moved into a standard shape. Right-multiplying
//! both sides by `w = t^-d1` (and twisting ψ by `x ↦ w x w^-1`) kills the
//! `t`-part of `u`; conjugating everything by `t^-r1` then clears the
//! denominator of `u`'s exponent. What is left is
//!
//! ```text
//! u' = a^m1,   v' = a^{m2/n^r} t^d,   ψ' of the same type as ψ,
//! ```
//!
//! and a conjugator is sought as `g = a^γ t^p`:
//!
//! * type II with `c ≠ 1`: the `t`-parts force `p = d/(1-c)`, after which
//!   `γ` is given in closed form;
//! * type II with `c = 1`, and type I: the `a`-parts become
//!   `A n^x + B y = C n^z` with `γ = y/n^x`, `p = z - x`, handed to
//!   [`crate::dioph::solve`].
//!
//! Every conjugator is mapped back to the original instance and checked
//! there before it is returned.

use num_bigint::BigInt;
use serde::Serialize;

use crate::dioph::{solve, DiophInstance};
use crate::endo::Endo;
use crate::error::{Error, Result};
use crate::group::GroupElement;
use crate::nrat::{pow_n, NRational};

/// A query `u ∼_psi v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TcpInstance {
    pub u: GroupElement,
    pub v: GroupElement,
    pub psi: Endo,
}

impl TcpInstance {
    pub fn new(u: GroupElement, v: GroupElement, psi: Endo) -> Result<Self> {
        if u.n() != v.n() {
            return Err(Error::MismatchedN(u.n(), v.n()));
        }
        if u.n() != psi.n() {
            return Err(Error::MismatchedN(u.n(), psi.n()));
        }
        Ok(TcpInstance { u, v, psi })
    }

    /// Whether `(gψ)^-1 u g = v`.
    pub fn is_witness(&self, g: &GroupElement) -> bool {
        self.psi.apply(g).inv().mul(&self.u).mul(g) == self.v
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TcpResult {
    pub decision: bool,
    #[serde(serialize_with = "ser_opt_elem")]
    pub witness: Option<GroupElement>,
    pub trace: Vec<String>,
}

fn ser_opt_elem<S: serde::Serializer>(
    g: &Option<GroupElement>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match g {
        Some(g) => s.serialize_str(&g.to_string()),
        None => s.serialize_none(),
    }
}

/// Sends a conjugator of the reduced instance back to the original one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BackMap {
    /// `w`, used as `g = w g₁ w^-1`.
    shift: GroupElement,
    /// The inverse of the rebasing automorphism, used as `g₁ = (g')φ^-1`.
    untwist: Endo,
}

impl BackMap {
    pub fn apply(&self, reduced_witness: &GroupElement) -> GroupElement {
        let g1 = self.untwist.apply(reduced_witness);
        self.shift.mul(&g1).mul(&self.shift.inv())
    }
}

/// An instance in standard shape together with its back-map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedInstance {
    /// `u' = a^m1`, `v' = a^{m2/n^r} t^d`.
    pub instance: TcpInstance,
    pub back: BackMap,
    pub m1: BigInt,
    /// `m2/n^r`.
    pub v_alpha: NRational,
    pub d: i64,
}

pub fn reduce_instance(inst: &TcpInstance) -> ReducedInstance {
    let ctx = inst.u.ctx();
    let d1 = inst.u.t_exponent();

    // (a) ⇔ (d) with w = t^-d1: uw ∼ vw under γ_{w^-1} ψ
    let w = ctx.t_pow(-d1);
    let psi1 = Endo::compose(&Endo::inner(&w.inv()), &inst.psi);
    let u1 = inst.u.mul(&w);
    let v1 = inst.v.mul(&w);

    // (a) ⇔ (b) with φ = γ_{t^-r1}: x ↦ t^r1 x t^-r1
    let r1 = u1.alpha().exp() as i64;
    let phi = Endo::inner(&ctx.t_pow(-r1));
    let phi_inv = Endo::inner(&ctx.t_pow(r1));
    let psi2 = Endo::compose(&Endo::compose(&phi_inv, &psi1), &phi);
    let u2 = phi.apply(&u1);
    let v2 = phi.apply(&v1);

    let m1 = u2
        .alpha()
        .to_integer()
        .expect("clearing the denominator of u leaves an integer exponent");
    ReducedInstance {
        m1,
        v_alpha: v2.alpha().clone(),
        d: v2.t_exponent(),
        instance: TcpInstance {
            u: u2,
            v: v2,
            psi: psi2,
        },
        back: BackMap {
            shift: w,
            untwist: phi_inv,
        },
    }
}

/// Decides `inst.u ∼_ψ inst.v` and returns a verified conjugator on YES.
///
/// ```
/// use bs1n::{Endo, GroupContext};
/// use bs1n::tcp::{decide_tcp, TcpInstance};
///
/// let ctx = GroupContext::new(2).unwrap();
/// let inst = TcpInstance::new(ctx.a(), ctx.parse("a^2").unwrap(), Endo::identity(ctx)).unwrap();
/// let res = decide_tcp(&inst).unwrap();
/// assert!(res.decision);
/// assert!(inst.is_witness(res.witness.as_ref().unwrap()));
/// ```
pub fn decide_tcp(inst: &TcpInstance) -> Result<TcpResult> {
    let mut trace = Vec::new();
    if inst.u == inst.v {
        trace.push("u = v, so g = 1 works for every ψ".to_string());
        return Ok(TcpResult {
            decision: true,
            witness: Some(inst.u.ctx().identity()),
            trace,
        });
    }
    let (d1, d2) = (inst.u.t_exponent(), inst.v.t_exponent());
    if inst.psi.is_type_i() && d1 != d2 {
        trace.push(format!(
            "type-I twist preserves t-exponents, but π(u) = {d1} and π(v) = {d2}"
        ));
        return Ok(no(trace));
    }

    let red = reduce_instance(inst);
    trace.push(format!(
        "reduced to u' = {}, v' = {}, ψ' = {}",
        red.instance.u, red.instance.v, red.instance.psi
    ));

    let reduced_witness = match &red.instance.psi {
        Endo::TypeII { beta, c } => solve_type_ii(&red, beta, *c, &mut trace)?,
        Endo::TypeI { alpha, beta } => solve_type_i(&red, alpha, beta, &mut trace)?,
    };
    let Some(g_red) = reduced_witness else {
        return Ok(no(trace));
    };
    if !red.instance.is_witness(&g_red) {
        return Err(Error::Internal(format!(
            "conjugator {g_red} fails the reduced instance {:?}",
            red.instance
        )));
    }
    let g = red.back.apply(&g_red);
    trace.push(format!("reduced conjugator {g_red} maps back to {g}"));
    if !inst.is_witness(&g) {
        return Err(Error::Internal(format!(
            "back-mapped conjugator {g} fails (gψ)^-1 u g = v for {inst:?}"
        )));
    }
    Ok(TcpResult {
        decision: true,
        witness: Some(g),
        trace,
    })
}

/// Ordinary conjugacy: `v = g^-1 u g`.
pub fn decide_conj(u: &GroupElement, v: &GroupElement) -> Result<TcpResult> {
    let psi = Endo::identity(u.ctx());
    decide_tcp(&TcpInstance::new(u.clone(), v.clone(), psi)?)
}

fn no(trace: Vec<String>) -> TcpResult {
    TcpResult {
        decision: false,
        witness: None,
        trace,
    }
}

fn solve_type_ii(
    red: &ReducedInstance,
    beta: &NRational,
    c: i64,
    trace: &mut Vec<String>,
) -> Result<Option<GroupElement>> {
    let ctx = red.instance.u.ctx();
    let d = red.d;
    if c != 1 {
        // t-parts: d = p (1 - c)
        let k = 1 - c;
        if d % k != 0 {
            trace.push(format!("type II, c = {c}: (1 - c) = {k} does not divide d = {d}"));
            return Ok(None);
        }
        let p = d / k;
        let gamma = &(&red.v_alpha.scale_pow(p * c) + &(&ctx.geom(c, p) * beta)) - &ctx.int(red.m1.clone());
        trace.push(format!("type II, c = {c}: p = {p}, γ = {gamma}"));
        return Ok(Some(ctx.element(gamma, p)));
    }
    if d != 0 {
        trace.push(format!("type II, c = 1: t-exponent gap d = {d} ≠ 0"));
        return Ok(None);
    }
    let n = ctx.n();
    let (r, q) = (red.v_alpha.exp(), beta.exp());
    let (m1, m2, l) = (&red.m1, red.v_alpha.numer(), beta.numer());
    let nm1 = BigInt::from(n - 1);
    // A n^x + B y + C n^z = 0, scaled through by n^q
    let a = l * pow_n(n, r) + m1 * pow_n(n, r + q) * &nm1;
    let b = pow_n(n, r + q) * &nm1;
    let c_eq = m2 * BigInt::from(1 - n) * pow_n(n, q) - l * pow_n(n, r);
    dioph_witness(ctx, a, b, -c_eq, trace)
}

fn solve_type_i(
    red: &ReducedInstance,
    alpha: &NRational,
    beta: &NRational,
    trace: &mut Vec<String>,
) -> Result<Option<GroupElement>> {
    let ctx = red.instance.u.ctx();
    let n = ctx.n();
    let (k, j) = (alpha.numer(), alpha.exp());
    let (l, q) = (beta.numer(), beta.exp());
    let (m1, m2, r) = (&red.m1, red.v_alpha.numer(), red.v_alpha.exp());
    let nm1 = BigInt::from(n - 1);
    let a = l * pow_n(n, r + j) + &nm1 * m1 * pow_n(n, r + j + q);
    let b = &nm1 * (pow_n(n, j) - k) * pow_n(n, r + q);
    let c = &nm1 * m2 * pow_n(n, j + q) + l * pow_n(n, r + j);
    dioph_witness(ctx, a, b, c, trace)
}

/// Solves `A n^x + B y = C n^z` and turns a solution into `a^{y/n^x} t^{z-x}`.
fn dioph_witness(
    ctx: crate::group::GroupContext,
    a: BigInt,
    b: BigInt,
    c: BigInt,
    trace: &mut Vec<String>,
) -> Result<Option<GroupElement>> {
    let inst = DiophInstance::new(a, b, c, ctx.n())?;
    let found = solve(&inst)?;
    trace.push(format!(
        "solve {} n^x + {} y = {} n^z: {}",
        inst.a,
        inst.b,
        inst.c,
        match &found {
            Some(s) => format!("x = {}, y = {}, z = {}", s.x, s.y, s.z),
            None => "no solution".to_string(),
        }
    ));
    Ok(found.map(|s| {
        let x = i64::try_from(s.x).expect("x out of range");
        let gamma = ctx.rat(s.y, s.x as u32);
        ctx.element(gamma, s.z - x)
    }))
}
