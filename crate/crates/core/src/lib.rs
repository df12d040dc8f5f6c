//! Exact computation in the solvable Baumslag–Solitar groups
//! `BS(1,n) = <a, t | a = t^-1 a^n t>`, `|n| >= 2`.
//!
//! The crate provides
//!
//! * [`nrat`]: arithmetic in `Z[1/n]`, the exponents of `a`;
//! * [`group`]: words, normal forms `a^α t^c`, the group law and the
//!   faithful representation in `GL2(Q)`;
//! * [`endo`]: the two families of endomorphisms, their action and
//!   composition;
//! * [`dioph`]: a solver for `A n^x + B y = C n^z`;
//! * [`tcp`]: a decision procedure for twisted conjugacy `u ∼_ψ v` that
//!   returns verified conjugators;
//! * [`fixpoint`]: fixed-point and weakly-fixed-point queries built on it;
//! * [`oracle`]: bounded brute-force cross-checks.
//!
//! ```
//! use bs1n::{Endo, GroupContext};
//! use bs1n::tcp::{decide_tcp, TcpInstance};
//!
//! let ctx = GroupContext::new(2).unwrap();
//! let g = ctx.parse("t a").unwrap();
//! assert_eq!(g.to_string(), "a^{2} t^{1}");
//!
//! // a^3 t and a t are conjugate; the conjugator comes back verified
//! let inst = TcpInstance::new(ctx.parse("a^3 t").unwrap(), ctx.parse("a t").unwrap(), Endo::identity(ctx)).unwrap();
//! let res = decide_tcp(&inst).unwrap();
//! assert!(res.decision);
//! assert!(inst.is_witness(res.witness.as_ref().unwrap()));
//! ```

pub mod dioph;
pub mod endo;
mod error;
pub mod fixpoint;
pub mod group;
pub mod nrat;
pub mod oracle;
pub mod tcp;

pub use endo::{parse_endo, Endo, ParsedEndo};
pub use error::{Error, Result};
pub use group::{GroupContext, GroupElement, RatMatrix2, Word};
pub use nrat::{geom, NRational};
