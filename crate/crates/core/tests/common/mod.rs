//! Random generators and independent oracles shared by the integration tests.
#![allow(dead_code)]

use bs1n::{Endo, GroupContext, GroupElement, NRational, RatMatrix2};
use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;

pub const ALL_N: [i64; 6] = [-3, -2, 2, 3, 5, 10];
pub const SMALL_N: [i64; 5] = [-2, 2, -3, 3, 5];

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn pick_ctx(rng: &mut ChaCha8Rng, ns: &[i64]) -> GroupContext {
    GroupContext::new(*ns.choose(rng).unwrap()).unwrap()
}

/// `k / n^p` with `|k| <= kmax`, `p <= pmax`.
pub fn rat(rng: &mut ChaCha8Rng, ctx: &GroupContext, kmax: i64, pmax: u32) -> NRational {
    ctx.rat(rng.gen_range(-kmax..=kmax), rng.gen_range(0..=pmax))
}

pub fn nonzero_rat(rng: &mut ChaCha8Rng, ctx: &GroupContext, kmax: i64, pmax: u32) -> NRational {
    loop {
        let r = rat(rng, ctx, kmax, pmax);
        if !r.is_zero() {
            return r;
        }
    }
}

pub fn elem(rng: &mut ChaCha8Rng, ctx: &GroupContext, kmax: i64, pmax: u32, cmax: i64) -> GroupElement {
    ctx.element(rat(rng, ctx, kmax, pmax), rng.gen_range(-cmax..=cmax))
}

pub fn type_i(rng: &mut ChaCha8Rng, ctx: &GroupContext) -> Endo {
    Endo::type_i(nonzero_rat(rng, ctx, 6, 2), rat(rng, ctx, 6, 2))
}

pub fn type_ii(rng: &mut ChaCha8Rng, ctx: &GroupContext, cs: &[i64]) -> Endo {
    Endo::type_ii(rat(rng, ctx, 6, 2), *cs.choose(rng).unwrap())
}

/// Images of the generators: `(a)ψ`, `(t)ψ`.
pub fn generator_images(psi: &Endo, ctx: &GroupContext) -> (GroupElement, GroupElement) {
    match psi {
        Endo::TypeI { alpha, beta } => (ctx.a_pow(alpha.clone()), ctx.element(beta.clone(), 1)),
        Endo::TypeII { beta, c } => (ctx.identity(), ctx.element(beta.clone(), *c)),
    }
}

/// `x^e` by repeated multiplication, for small `e` of either sign.
pub fn slow_pow(x: &GroupElement, e: i64) -> GroupElement {
    let base = if e < 0 { x.inv() } else { x.clone() };
    (0..e.unsigned_abs()).fold(x.ctx().identity(), |acc, _| acc.mul(&base))
}

/// `(g)ψ` computed letter by letter from the generator images, reading
/// `g = a^{k/n^p} t^c` as the word `t^-p a^k t^p t^c`.
pub fn word_image(psi: &Endo, g: &GroupElement) -> GroupElement {
    let ctx = g.ctx();
    let (ia, it) = generator_images(psi, &ctx);
    let k = g.alpha().numer();
    let p = g.alpha().exp() as i64;
    // the image of a is a pure a-power, so (a)ψ^k just scales its exponent
    let ia_k = ctx.a_pow(ia.alpha().mul_int(k));
    slow_pow(&it, -p)
        .mul(&ia_k)
        .mul(&slow_pow(&it, p + g.t_exponent()))
}

/// `(gψ)^-1 u g = v`, with `gψ` from [`word_image`] and the check done on
/// matrices.
pub fn witness_by_matrices(u: &GroupElement, v: &GroupElement, psi: &Endo, g: &GroupElement) -> bool {
    let gp = word_image(psi, g).to_matrix();
    let Some(gp_inv) = gp.inverse() else {
        return false;
    };
    &(&gp_inv * &u.to_matrix()) * &g.to_matrix() == v.to_matrix()
}

/// Reads `a^α t^c` back off `[[n^c, α], [0, 1]]`.
pub fn decode_matrix(ctx: &GroupContext, m: &RatMatrix2) -> Option<GroupElement> {
    use num_traits::{One, Zero};
    if !m.m[1][0].is_zero() || !m.m[1][1].is_one() {
        return None;
    }
    let diag = &m.m[0][0];
    // find c with n^c = diag
    let n = BigInt::from(ctx.n());
    let mut c = None;
    for e in -64i64..=64 {
        let pw = num_traits::pow(n.clone(), e.unsigned_abs() as usize);
        let v = if e >= 0 {
            num_rational::BigRational::from_integer(pw)
        } else {
            num_rational::BigRational::new(BigInt::one(), pw)
        };
        if &v == diag {
            c = Some(e);
            break;
        }
    }
    let c = c?;
    let alpha = &m.m[0][1];
    // alpha = num/den with den | n^p for some p
    let den = alpha.denom().clone();
    for p in 0u32..=64 {
        let pw = num_traits::pow(n.clone(), p as usize);
        let pw_abs = if pw < BigInt::zero() { -pw.clone() } else { pw.clone() };
        if (&pw_abs % &den).is_zero() {
            let k = alpha.numer() * (&pw / &den);
            return Some(ctx.element(ctx.rat(k, p), c));
        }
    }
    None
}

/// Text for `a^{α}`, or `1`.
pub fn a_text(alpha: &NRational) -> String {
    if alpha.is_zero() {
        "1".into()
    } else {
        format!("a^{{{alpha}}}")
    }
}

/// Text for `t^c`, or `1`.
pub fn t_text(c: i64) -> String {
    if c == 0 {
        "1".into()
    } else {
        format!("t^{c}")
    }
}
