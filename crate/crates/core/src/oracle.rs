//! Bounded exhaustive searches used to cross-check the deciders.
//!
//! These confirm YES answers and give box-limited evidence for NO answers.
//! They share no code path with [`crate::tcp`] or [`crate::dioph::solve`]
//! beyond group multiplication and exact integer arithmetic.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::dioph::{strip_n, DiophInstance, DiophSolution};
use crate::group::GroupElement;
use crate::nrat::pow_n;
use crate::tcp::TcpInstance;

/// Bounds for conjugators `a^{y/n^x} t^p`: `x <= max_exp`, `|y| <= max_num`,
/// `|p| <= max_t`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBox {
    pub max_exp: u32,
    pub max_num: u64,
    pub max_t: u64,
}

impl SearchBox {
    pub fn new(max_exp: u32, max_num: u64, max_t: u64) -> Self {
        SearchBox {
            max_exp,
            max_num,
            max_t,
        }
    }
}

fn signed(k: u64) -> impl Iterator<Item = i64> {
    let k = k as i64;
    std::iter::once(k).chain((k != 0).then_some(-k))
}

/// The first `g = a^{y/n^x} t^p` in `(x, |y|, |p|)` order (positive sign
/// first) with `(gψ)^-1 u g = v`.
pub fn brute_tcp(inst: &TcpInstance, bx: &SearchBox) -> Option<GroupElement> {
    let ctx = inst.u.ctx();
    for x in 0..=bx.max_exp {
        for ay in 0..=bx.max_num {
            for y in signed(ay) {
                let gamma = ctx.rat(y, x);
                for ap in 0..=bx.max_t {
                    for p in signed(ap) {
                        let g = ctx.element(gamma.clone(), p);
                        if inst.is_witness(&g) {
                            return Some(g);
                        }
                    }
                }
            }
        }
    }
    None
}

/// Scans `x ∈ [0, xmax]` and `z' = z + s ∈ [0, zmax]`, where `C = C' n^s`,
/// solving for `y` by exact division.
pub fn brute_dioph(inst: &DiophInstance, xmax: u32, zmax: u32) -> Option<DiophSolution> {
    let n = inst.n;
    let (c_core, s) = if inst.c.is_zero() {
        (BigInt::zero(), 0)
    } else {
        strip_n(&inst.c, n).ok()?
    };
    let zrange = if inst.c.is_zero() { 0 } else { zmax };
    for x in 0..=xmax {
        let ax = &inst.a * pow_n(n, x);
        for zp in 0..=zrange {
            let rhs = &c_core * pow_n(n, zp);
            let diff = rhs - &ax;
            let y = if inst.b.is_zero() {
                if !diff.is_zero() {
                    continue;
                }
                BigInt::zero()
            } else {
                let (q, r) = diff.div_rem(&inst.b);
                if !r.is_zero() {
                    continue;
                }
                q
            };
            return Some(DiophSolution {
                x: x as u64,
                y,
                z: zp as i64 - s as i64,
            });
        }
    }
    None
}

/// Compares `to_matrix(gh)` against `to_matrix(g) · to_matrix(h)`.
pub fn matrix_check(g: &GroupElement, h: &GroupElement) -> bool {
    g.mul(h).to_matrix() == &g.to_matrix() * &h.to_matrix()
}

/// Equality of two elements judged through their matrices only.
pub fn matrix_eq(g: &GroupElement, h: &GroupElement) -> bool {
    g.to_matrix() == h.to_matrix()
}
