//! Words, normal forms and the group law of `BS(1,n) = <a, t | a = t^-1 a^n t>`.
//!
//! Every element has a unique normal form `a^α t^c` with `α ∈ Z[1/n]`, where
//! `a^{k/n^p}` abbreviates `t^-p a^k t^p`. Products follow
//!
//! ```text
//! (a^α1 t^c1)(a^α2 t^c2) = a^{α1 + n^c1 α2} t^{c1 + c2}
//! ```
//!
//! and `a ↦ [[1,1],[0,1]]`, `t ↦ [[n,0],[0,1]]` embeds the group in
//! `GL2(Q)`, which [`GroupElement::to_matrix`] exposes as an independent
//! equality check.

use std::fmt;
use std::ops::Mul;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{parse_err, Result};
use crate::nrat::{check_n, geom, parse_int, parse_rat_at, pow_n, NRational};

/// The group parameter `n` of `BS(1,n)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupContext {
    n: i64,
}

impl GroupContext {
    pub fn new(n: i64) -> Result<Self> {
        check_n(n)?;
        Ok(GroupContext { n })
    }

    pub fn n(&self) -> i64 {
        self.n
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement {
            alpha: self.zero(),
            texp: 0,
        }
    }

    pub fn a(&self) -> GroupElement {
        self.a_pow(self.int(1))
    }

    pub fn t(&self) -> GroupElement {
        self.t_pow(1)
    }

    pub fn a_pow(&self, alpha: NRational) -> GroupElement {
        self.element(alpha, 0)
    }

    pub fn t_pow(&self, c: i64) -> GroupElement {
        self.element(self.zero(), c)
    }

    /// The element `a^alpha t^texp`.
    ///
    /// # Panics
    ///
    /// If `alpha` belongs to a different `n`.
    pub fn element(&self, alpha: NRational, texp: i64) -> GroupElement {
        assert_eq!(alpha.base(), self.n, "exponent built for a different n");
        GroupElement { alpha, texp }
    }

    pub fn zero(&self) -> NRational {
        NRational::int_unchecked(0, self.n)
    }

    pub fn one(&self) -> NRational {
        NRational::int_unchecked(1, self.n)
    }

    pub fn int(&self, k: impl Into<BigInt>) -> NRational {
        NRational::int_unchecked(k, self.n)
    }

    /// `k / n^p`, reduced.
    pub fn rat(&self, k: impl Into<BigInt>, p: u32) -> NRational {
        NRational::reduce(k.into(), p, self.n)
    }

    /// `n^c` for any integer `c`.
    pub fn n_pow(&self, c: i64) -> NRational {
        self.one().scale_pow(c)
    }

    pub fn geom(&self, c: i64, r: i64) -> NRational {
        geom(c, r, self.n)
    }

    pub fn parse_rat(&self, text: &str) -> Result<NRational> {
        parse_rat_at(text, 0, self.n)
    }

    pub fn parse_word(&self, text: &str) -> Result<Word> {
        parse_word(text, *self)
    }

    /// Parses a word and reduces it to normal form.
    pub fn parse(&self, text: &str) -> Result<GroupElement> {
        Ok(self.normalize(&self.parse_word(text)?))
    }

    /// Reduces a word to its normal form with one left-to-right pass:
    /// `a^e` adds `e n^c` to the `a`-exponent, `t^e` adds `e` to `c`.
    pub fn normalize(&self, word: &Word) -> GroupElement {
        let mut alpha = self.zero();
        let mut texp: i64 = 0;
        for letter in &word.letters {
            match letter.gen {
                Gen::A => {
                    let step = NRational::int_unchecked(letter.exp.clone(), self.n).scale_pow(texp);
                    alpha = &alpha + &step;
                }
                Gen::T => {
                    let e = letter.exp.to_i64().expect("t-exponent checked at parse time");
                    texp = texp.checked_add(e).expect("t-exponent overflow");
                }
            }
        }
        GroupElement { alpha, texp }
    }

    /// The product of generator matrices along the word, computed without
    /// passing through normal forms.
    pub fn word_matrix(&self, word: &Word) -> RatMatrix2 {
        let a = RatMatrix2::generator_a();
        let t = RatMatrix2::generator_t(self.n);
        word.letters.iter().fold(RatMatrix2::identity(), |acc, l| {
            let base = match l.gen {
                Gen::A => &a,
                Gen::T => &t,
            };
            &acc * &base.pow(&l.exp)
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Gen {
    A,
    T,
}

/// One syllable `gen^exp` of a word; `exp` is never zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Letter {
    pub gen: Gen,
    pub exp: BigInt,
}

/// An unreduced word over `a^±1, t^±1`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Word {
    pub letters: Vec<Letter>,
}

impl Word {
    pub fn new(letters: Vec<Letter>) -> Self {
        Word { letters }
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.letters.clone();
        letters.extend(other.letters.iter().cloned());
        Word { letters }
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            let g = match l.gen {
                Gen::A => 'a',
                Gen::T => 't',
            };
            if l.exp.is_one() {
                write!(f, "{g}")?;
            } else {
                write!(f, "{g}^{}", l.exp)?;
            }
        }
        Ok(())
    }
}

/// Parses a word.
///
/// ```text
/// word := { term } ; term := gen [ "^" exp ] | "1"
/// gen  := "a" | "t" ; exp := int | "{" rat "}"
/// ```
///
/// A braced rational exponent is only allowed on `a` and expands
/// `a^{k/n^p}` to `t^-p a^k t^p`; this makes every rendered normal form
/// parseable. Zero exponents are rejected.
pub fn parse_word(text: &str, ctx: GroupContext) -> Result<Word> {
    let bytes = text.as_bytes();
    let mut i = 0;
    let mut letters = Vec::new();
    let skip_ws = |i: &mut usize| {
        while *i < bytes.len() && bytes[*i].is_ascii_whitespace() {
            *i += 1;
        }
    };
    loop {
        skip_ws(&mut i);
        if i >= bytes.len() {
            break;
        }
        let start = i;
        let gen = match bytes[i] {
            b'a' => Gen::A,
            b't' => Gen::T,
            b'1' => {
                i += 1;
                continue;
            }
            other => {
                return Err(parse_err(
                    i,
                    format!("expected `a`, `t` or `1`, found `{}`", other as char),
                ))
            }
        };
        i += 1;
        skip_ws(&mut i);
        if i < bytes.len() && bytes[i] == b'^' {
            i += 1;
            skip_ws(&mut i);
            if i < bytes.len() && bytes[i] == b'{' {
                let close = text[i..]
                    .find('}')
                    .map(|k| k + i)
                    .ok_or_else(|| parse_err(i, "unclosed `{`"))?;
                let inner = &text[i + 1..close];
                match gen {
                    Gen::A => {
                        let q = parse_rat_at(inner, i + 1, ctx.n())?;
                        if q.is_zero() {
                            return Err(parse_err(start, "zero exponent"));
                        }
                        push_rational_a(&mut letters, &q);
                    }
                    Gen::T => {
                        let trimmed = inner.trim();
                        let e = parse_int(trimmed, i + 1)?;
                        push_letter(&mut letters, gen, e, start)?;
                    }
                }
                i = close + 1;
            } else {
                let s = i;
                if i < bytes.len() && bytes[i] == b'-' {
                    i += 1;
                }
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let e = parse_int(&text[s..i], s)?;
                push_letter(&mut letters, gen, e, start)?;
            }
        } else {
            push_letter(&mut letters, gen, BigInt::one(), start)?;
        }
    }
    Ok(Word { letters })
}

fn push_letter(letters: &mut Vec<Letter>, gen: Gen, exp: BigInt, pos: usize) -> Result<()> {
    if exp.is_zero() {
        return Err(parse_err(pos, "zero exponent"));
    }
    if gen == Gen::T && exp.to_i64().is_none() {
        return Err(parse_err(pos, "t-exponent out of range"));
    }
    letters.push(Letter { gen, exp });
    Ok(())
}

fn push_rational_a(letters: &mut Vec<Letter>, q: &NRational) {
    let p = q.exp() as i64;
    if p > 0 {
        letters.push(Letter {
            gen: Gen::T,
            exp: BigInt::from(-p),
        });
    }
    letters.push(Letter {
        gen: Gen::A,
        exp: q.numer().clone(),
    });
    if p > 0 {
        letters.push(Letter {
            gen: Gen::T,
            exp: BigInt::from(p),
        });
    }
}

/// An element `a^alpha t^texp` of `BS(1,n)` in normal form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupElement {
    alpha: NRational,
    texp: i64,
}

impl GroupElement {
    pub fn alpha(&self) -> &NRational {
        &self.alpha
    }

    /// The image `π(g)` in `Z = <t>`: the exponent sum of `t`.
    pub fn t_exponent(&self) -> i64 {
        self.texp
    }

    pub fn n(&self) -> i64 {
        self.alpha.base()
    }

    pub fn ctx(&self) -> GroupContext {
        GroupContext { n: self.n() }
    }

    pub fn is_identity(&self) -> bool {
        self.texp == 0 && self.alpha.is_zero()
    }

    pub fn mul(&self, other: &GroupElement) -> GroupElement {
        GroupElement {
            alpha: &self.alpha + &other.alpha.scale_pow(self.texp),
            texp: self.texp.checked_add(other.texp).expect("t-exponent overflow"),
        }
    }

    /// `(a^α t^c)^-1 = a^{-α n^-c} t^-c`
    pub fn inv(&self) -> GroupElement {
        GroupElement {
            alpha: -self.alpha.scale_pow(-self.texp),
            texp: -self.texp,
        }
    }

    /// `(a^α t^c)^r = a^{geom(c, r) α} t^{rc}`
    pub fn pow(&self, r: i64) -> GroupElement {
        let coeff = geom(self.texp, r, self.n());
        GroupElement {
            alpha: &coeff * &self.alpha,
            texp: self.texp.checked_mul(r).expect("t-exponent overflow"),
        }
    }

    /// `h^-1 self h`.
    pub fn conj(&self, h: &GroupElement) -> GroupElement {
        h.inv().mul(self).mul(h)
    }

    /// The image under `a ↦ [[1,1],[0,1]]`, `t ↦ [[n,0],[0,1]]`, which is
    /// `[[n^c, α], [0, 1]]`.
    pub fn to_matrix(&self) -> RatMatrix2 {
        let nc = if self.texp >= 0 {
            BigRational::from_integer(pow_n(self.n(), self.texp as u32))
        } else {
            BigRational::new(BigInt::one(), pow_n(self.n(), (-self.texp) as u32))
        };
        RatMatrix2 {
            m: [
                [nc, self.alpha.to_ratio()],
                [BigRational::zero(), BigRational::one()],
            ],
        }
    }
}

impl Mul for &GroupElement {
    type Output = GroupElement;

    fn mul(self, rhs: &GroupElement) -> GroupElement {
        GroupElement::mul(self, rhs)
    }
}

/// Renders `a^{α} t^{c}`, omitting trivial parts and printing `1` for the
/// identity.
impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.alpha.is_zero(), self.texp == 0) {
            (true, true) => write!(f, "1"),
            (false, true) => write!(f, "a^{{{}}}", self.alpha),
            (true, false) => write!(f, "t^{{{}}}", self.texp),
            (false, false) => write!(f, "a^{{{}}} t^{{{}}}", self.alpha, self.texp),
        }
    }
}

/// A 2×2 matrix over `Q`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatMatrix2 {
    pub m: [[BigRational; 2]; 2],
}

impl RatMatrix2 {
    pub fn identity() -> Self {
        let (o, z) = (BigRational::one(), BigRational::zero());
        RatMatrix2 {
            m: [[o.clone(), z.clone()], [z, o]],
        }
    }

    pub fn generator_a() -> Self {
        let (o, z) = (BigRational::one(), BigRational::zero());
        RatMatrix2 {
            m: [[o.clone(), o.clone()], [z, o]],
        }
    }

    pub fn generator_t(n: i64) -> Self {
        let (o, z) = (BigRational::one(), BigRational::zero());
        RatMatrix2 {
            m: [[BigRational::from_integer(n.into()), z.clone()], [z, o]],
        }
    }

    pub fn det(&self) -> BigRational {
        &self.m[0][0] * &self.m[1][1] - &self.m[0][1] * &self.m[1][0]
    }

    pub fn inverse(&self) -> Option<Self> {
        let d = self.det();
        if d.is_zero() {
            return None;
        }
        let [[a, b], [c, e]] = &self.m;
        Some(RatMatrix2 {
            m: [[e / &d, -b / &d], [-c / &d, a / &d]],
        })
    }

    /// Integer power by repeated squaring.
    pub fn pow(&self, e: &BigInt) -> Self {
        let mut base = if e.is_negative() {
            self.inverse().expect("singular matrix")
        } else {
            self.clone()
        };
        let mut k = e.abs();
        let mut acc = RatMatrix2::identity();
        let two = BigInt::from(2);
        while !k.is_zero() {
            if (&k % &two).is_one() {
                acc = &acc * &base;
            }
            k /= &two;
            if !k.is_zero() {
                base = &base * &base;
            }
        }
        acc
    }
}

impl Mul for &RatMatrix2 {
    type Output = RatMatrix2;

    fn mul(self, rhs: &RatMatrix2) -> RatMatrix2 {
        // rational products are costly, and these matrices are mostly zeros
        let term = |x: &BigRational, y: &BigRational| {
            if x.is_zero() || y.is_zero() {
                BigRational::zero()
            } else {
                x * y
            }
        };
        let cell = |i: usize, j: usize| {
            let (p, q) = (term(&self.m[i][0], &rhs.m[0][j]), term(&self.m[i][1], &rhs.m[1][j]));
            if p.is_zero() {
                q
            } else if q.is_zero() {
                p
            } else {
                p + q
            }
        };
        RatMatrix2 {
            m: [[cell(0, 0), cell(0, 1)], [cell(1, 0), cell(1, 1)]],
        }
    }
}

impl fmt::Display for RatMatrix2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [[a, b], [c, d]] = &self.m;
        write!(f, "[[{a}, {b}], [{c}, {d}]]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ctx(n: i64) -> GroupContext {
        GroupContext::new(n).unwrap()
    }

    #[test]
    fn parse_examples() {
        let c = ctx(2);
        let w = c.parse_word("t^-1 a^3 t").unwrap();
        let got: Vec<(Gen, i64)> = w
            .letters
            .iter()
            .map(|l| (l.gen, l.exp.to_i64().unwrap()))
            .collect();
        assert_eq!(got, vec![(Gen::T, -1), (Gen::A, 3), (Gen::T, 1)]);
        assert!(c.parse_word("").unwrap().is_empty());
        assert!(matches!(
            c.parse_word("a^0"),
            Err(crate::Error::Parse { pos: 0, .. })
        ));
        assert!(c.parse_word("a^").is_err());
        assert!(c.parse_word("b").is_err());
        assert!(c.parse_word("t^{1/n^1}").is_err());
        assert!(c.parse_word("a^{1/n^1").is_err());
    }

    #[test]
    fn normalize_examples() {
        let c = ctx(2);
        assert_eq!(c.parse("t a").unwrap(), c.element(c.int(2), 1));
        assert_eq!(c.parse("t^-1 a t").unwrap(), c.a_pow(c.rat(1, 1)));
        assert_eq!(c.parse("t^-1 a^2 t").unwrap(), c.a());
        assert_eq!(c.parse("t a").unwrap().to_string(), "a^{2} t^{1}");
        assert_eq!(c.parse("").unwrap().to_string(), "1");
    }

    #[test]
    fn group_law_examples() {
        let c = ctx(2);
        let at = c.parse("a t").unwrap();
        assert_eq!(at.mul(&at), c.element(c.int(3), 2));
        assert_eq!(at.mul(&at), at.pow(2));
        assert_eq!(at.inv(), c.element(c.rat(-1, 1), -1));
        assert_eq!(at.pow(3), c.element(c.int(7), 3));
        assert_eq!(at.pow(0), c.identity());
        assert_eq!(c.identity().inv(), c.identity());
        assert_eq!(c.a().conj(&c.t()), c.a_pow(c.rat(1, 1)));
        assert_eq!(c.a().conj(&c.t_pow(-1)), c.a_pow(c.int(2)));
        assert_eq!(c.parse("a^3 t^-2").unwrap().t_exponent(), -2);
        assert_eq!(c.a_pow(c.rat(5, 3)).t_exponent(), 0);
        // geom(1, -1) applied to a t agrees with the inverse
        assert_eq!(at.pow(-1), at.inv());
    }

    #[test]
    fn matrix_examples() {
        let c = ctx(2);
        assert_eq!(c.a().to_matrix(), RatMatrix2::generator_a());
        assert_eq!(c.t().to_matrix(), RatMatrix2::generator_t(2));
        assert_eq!(c.identity().to_matrix(), RatMatrix2::identity());
        assert_eq!(c.t().to_matrix().to_string(), "[[2, 0], [0, 1]]");
    }

    #[test]
    fn braced_rendering_parses_back() {
        let c = ctx(-3);
        let g = c.element(c.rat(-7, 4), -5);
        assert_eq!(g.to_string(), "a^{-7/n^4} t^{-5}");
        assert_eq!(c.parse(&g.to_string()).unwrap(), g);
    }

    fn arb_word() -> impl Strategy<Value = Word> {
        prop::collection::vec((prop::bool::ANY, -4i64..=4), 0..10).prop_map(|v| Word {
            letters: v
                .into_iter()
                .filter(|&(_, e)| e != 0)
                .map(|(is_a, e)| Letter {
                    gen: if is_a { Gen::A } else { Gen::T },
                    exp: BigInt::from(e),
                })
                .collect(),
        })
    }

    fn arb_n() -> impl Strategy<Value = i64> {
        prop::sample::select(vec![-3i64, -2, 2, 3, 5, 10])
    }

    proptest! {
        #[test]
        fn normalize_is_a_homomorphism(n in arb_n(), w1 in arb_word(), w2 in arb_word()) {
            let c = ctx(n);
            prop_assert_eq!(
                c.normalize(&w1.concat(&w2)),
                c.normalize(&w1).mul(&c.normalize(&w2))
            );
        }

        #[test]
        fn relator_is_trivial(n in arb_n(), x in arb_word(), y in arb_word()) {
            let c = ctx(n);
            let rel = c.parse_word(&format!("t^-1 a^{n} t")).unwrap();
            let a = c.parse_word("a").unwrap();
            prop_assert_eq!(
                c.normalize(&x.concat(&rel).concat(&y)),
                c.normalize(&x.concat(&a).concat(&y))
            );
        }

        #[test]
        fn normal_form_matches_word_matrix(n in arb_n(), w in arb_word()) {
            let c = ctx(n);
            prop_assert_eq!(c.normalize(&w).to_matrix(), c.word_matrix(&w));
        }

        #[test]
        fn render_parse_round_trip(n in arb_n(), w in arb_word()) {
            let c = ctx(n);
            let g = c.normalize(&w);
            prop_assert_eq!(c.parse(&g.to_string()).unwrap(), g);
        }

        #[test]
        fn pow_is_iterated_mul(n in arb_n(), w in arb_word(), r in -8i64..=8) {
            let c = ctx(n);
            let g = c.normalize(&w);
            let base = if r < 0 { g.inv() } else { g.clone() };
            let mut acc = c.identity();
            for _ in 0..r.unsigned_abs() {
                acc = acc.mul(&base);
            }
            prop_assert_eq!(g.pow(r), acc);
        }

        #[test]
        fn inverse_laws(n in arb_n(), w in arb_word()) {
            let c = ctx(n);
            let g = c.normalize(&w);
            prop_assert!(g.mul(&g.inv()).is_identity());
            prop_assert_eq!(g.inv().inv(), g.clone());
            prop_assert_eq!(g.conj(&c.identity()), g);
        }
    }
}
