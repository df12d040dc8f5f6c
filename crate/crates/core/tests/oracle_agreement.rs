//! The deciders against exhaustive search and against structural facts that
//! do not go through the reduction.

mod common;

use bs1n::dioph::{solve, DiophInstance};
use bs1n::oracle::{brute_dioph, brute_tcp, SearchBox};
use bs1n::tcp::{decide_conj, decide_tcp, reduce_instance, TcpInstance};
use bs1n::{Endo, GroupContext, GroupElement};
use proptest::prelude::*;

use common::{witness_by_matrices, word_image, SMALL_N};

fn n_strategy() -> impl Strategy<Value = i64> {
    prop::sample::select(SMALL_N.to_vec())
}

/// `(k, p, c)` for `a^{k/n^p} t^c`.
fn elem_parts(kmax: i64, pmax: u32, cmax: i64) -> impl Strategy<Value = (i64, u32, i64)> {
    (-kmax..=kmax, 0..=pmax, -cmax..=cmax)
}

#[derive(Clone, Debug)]
enum EndoParts {
    I(i64, u32, i64, u32),
    II(i64, u32, i64),
}

fn endo_parts() -> impl Strategy<Value = EndoParts> {
    prop_oneof![
        (-4i64..=4, 0u32..=1, -4i64..=4, 0u32..=1)
            .prop_filter("alpha must be nonzero", |p| p.0 != 0)
            .prop_map(|(a, p, b, q)| EndoParts::I(a, p, b, q)),
        (-4i64..=4, 0u32..=1, -2i64..=3).prop_map(|(b, q, c)| EndoParts::II(b, q, c)),
    ]
}

fn build(ctx: &GroupContext, (k, p, c): (i64, u32, i64)) -> GroupElement {
    ctx.element(ctx.rat(k, p), c)
}

fn build_endo(ctx: &GroupContext, e: &EndoParts) -> Endo {
    match *e {
        EndoParts::I(a, p, b, q) => Endo::type_i(ctx.rat(a, p), ctx.rat(b, q)),
        EndoParts::II(b, q, c) => Endo::type_ii(ctx.rat(b, q), c),
    }
}

fn in_box(g: &GroupElement, bx: &SearchBox) -> bool {
    let alpha = g.alpha();
    alpha.exp() <= bx.max_exp
        && alpha.numer().magnitude() <= &bx.max_num.into()
        && g.t_exponent().unsigned_abs() <= bx.max_t
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn tcp_agrees_with_brute_force(
        n in n_strategy(),
        u in elem_parts(4, 1, 2),
        v in elem_parts(4, 1, 2),
        e in endo_parts(),
    ) {
        let ctx = GroupContext::new(n).unwrap();
        let (u, v, psi) = (build(&ctx, u), build(&ctx, v), build_endo(&ctx, &e));
        let inst = TcpInstance::new(u.clone(), v.clone(), psi.clone()).unwrap();
        let res = decide_tcp(&inst).unwrap();
        let bx = SearchBox::new(2, 12, 3);
        let brute = brute_tcp(&inst, &bx);
        if let Some(g) = &brute {
            prop_assert!(res.decision, "brute force found {g}, decider says NO");
        }
        if res.decision {
            let g = res.witness.as_ref().unwrap();
            prop_assert!(witness_by_matrices(&u, &v, &psi, g));
            if in_box(g, &bx) {
                prop_assert!(brute.is_some());
            }
        }
    }

    #[test]
    fn conjugacy_agrees_with_brute_force(
        n in n_strategy(),
        u in elem_parts(6, 1, 2),
        v in elem_parts(6, 1, 2),
    ) {
        let ctx = GroupContext::new(n).unwrap();
        let (u, v) = (build(&ctx, u), build(&ctx, v));
        let res = decide_conj(&u, &v).unwrap();
        let inst = TcpInstance::new(u.clone(), v.clone(), Endo::identity(ctx)).unwrap();
        if brute_tcp(&inst, &SearchBox::new(2, 10, 3)).is_some() {
            prop_assert!(res.decision);
        }
        if let Some(g) = &res.witness {
            prop_assert_eq!(&u.conj(g), &v);
        }
    }

    #[test]
    fn dioph_agrees_with_brute_force(
        n in n_strategy(),
        a in -30i64..=30,
        b in -30i64..=30,
        c in -30i64..=30,
    ) {
        let inst = DiophInstance::new(a, b, c, n).unwrap();
        let got = solve(&inst).unwrap();
        if let Some(s) = &got {
            prop_assert!(inst.holds(s));
        }
        if brute_dioph(&inst, 25, 25).is_some() {
            prop_assert!(got.is_some());
        }
    }

    #[test]
    fn planted_instances_are_found(
        n in n_strategy(),
        u in elem_parts(20, 2, 3),
        g in elem_parts(20, 2, 3),
        e in endo_parts(),
    ) {
        let ctx = GroupContext::new(n).unwrap();
        let (u, g, psi) = (build(&ctx, u), build(&ctx, g), build_endo(&ctx, &e));
        let v = word_image(&psi, &g).inv().mul(&u).mul(&g);
        let inst = TcpInstance::new(u, v, psi).unwrap();
        let res = decide_tcp(&inst).unwrap();
        prop_assert!(res.decision);
        prop_assert!(inst.is_witness(res.witness.as_ref().unwrap()));
    }

    /// Twisted conjugacy is an equivalence relation; the decider must see
    /// symmetry and transitivity on planted chains.
    #[test]
    fn symmetric_and_transitive(
        n in n_strategy(),
        u in elem_parts(10, 2, 2),
        g1 in elem_parts(10, 2, 2),
        g2 in elem_parts(10, 2, 2),
        e in endo_parts(),
    ) {
        let ctx = GroupContext::new(n).unwrap();
        let (u, g1, g2, psi) = (build(&ctx, u), build(&ctx, g1), build(&ctx, g2), build_endo(&ctx, &e));
        let step = |x: &GroupElement, g: &GroupElement| psi.apply(g).inv().mul(x).mul(g);
        let v = step(&u, &g1);
        let w = step(&v, &g2);
        let back = TcpInstance::new(v.clone(), u.clone(), psi.clone()).unwrap();
        prop_assert!(back.is_witness(&g1.inv()));
        prop_assert!(decide_tcp(&back).unwrap().decision);
        let far = TcpInstance::new(u.clone(), w.clone(), psi.clone()).unwrap();
        prop_assert!(far.is_witness(&g1.mul(&g2)));
        prop_assert!(decide_tcp(&far).unwrap().decision);
    }

    /// The standard-shape instance has the same answer, and its conjugators
    /// map back to conjugators.
    #[test]
    fn reduction_preserves_answers(
        n in n_strategy(),
        u in elem_parts(8, 2, 2),
        v in elem_parts(8, 2, 2),
        e in endo_parts(),
    ) {
        let ctx = GroupContext::new(n).unwrap();
        let (u, v, psi) = (build(&ctx, u), build(&ctx, v), build_endo(&ctx, &e));
        let inst = TcpInstance::new(u, v, psi).unwrap();
        let red = reduce_instance(&inst);
        prop_assert_eq!(red.instance.u.t_exponent(), 0);
        prop_assert!(red.instance.u.alpha().is_integer());
        prop_assert_eq!(red.instance.psi.is_type_i(), inst.psi.is_type_i());
        let full = decide_tcp(&inst).unwrap();
        let reduced = decide_tcp(&red.instance).unwrap();
        prop_assert_eq!(full.decision, reduced.decision);
        if let Some(g) = &reduced.witness {
            prop_assert!(inst.is_witness(&red.back.apply(g)));
        }
    }

    /// Comparing t-exponents: `π(v) - π(u) = p (1 - c)` for any conjugator
    /// with `π(g) = p`, so YES forces `(1 - c) | (π(v) - π(u))`.
    #[test]
    fn type_ii_t_exponent_constraint(
        n in n_strategy(),
        u in elem_parts(6, 1, 4),
        v in elem_parts(6, 1, 4),
        beta in -4i64..=4,
        c in -3i64..=4,
    ) {
        let ctx = GroupContext::new(n).unwrap();
        let (u, v) = (build(&ctx, u), build(&ctx, v));
        let psi = Endo::type_ii(ctx.int(beta), c);
        let gap = v.t_exponent() - u.t_exponent();
        let res = decide_tcp(&TcpInstance::new(u, v, psi).unwrap()).unwrap();
        if res.decision {
            let p = res.witness.as_ref().unwrap().t_exponent();
            prop_assert_eq!(gap, p * (1 - c));
        } else if c != 1 {
            // for c ≠ 1 the t-exponents are the only obstruction
            prop_assert!(gap % (1 - c) != 0, "c = {}: divisible gap {} but NO", c, gap);
        }
    }
}
