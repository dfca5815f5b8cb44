//! Sparse multivariate polynomials over the integers.
//!
//! Variables are indexed by a `(vertex, color)` pair and ordered
//! lexicographically on that pair; that order is the single source of truth
//! for every canonical form in this crate. Polynomials are stored as a map
//! from canonical monomials to nonzero arbitrary-precision coefficients, so
//! structural equality of two values is exactly ring equality and printing
//! is deterministic.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// An indeterminate `x_v^(c)` identified by a 1-based vertex and color.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Variable {
    pub vertex: u32,
    pub color: u32,
}

impl Variable {
    /// Panics if either index is zero; vertices and colors are 1-based.
    pub fn new(vertex: u32, color: u32) -> Self {
        assert!(vertex >= 1, "vertex index must be >= 1");
        assert!(color >= 1, "color index must be >= 1");
        Variable { vertex, color }
    }
}

impl fmt::Display for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{}_{}", self.vertex, self.color)
    }
}

/// A product of variable powers with strictly increasing variables and
/// positive exponents. The empty product is the monomial `1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    factors: Vec<(Variable, u32)>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn variable(var: Variable) -> Self {
        Monomial {
            factors: vec![(var, 1)],
        }
    }

    /// Builds a monomial from arbitrary `(variable, exponent)` pairs,
    /// merging repeats and dropping zero exponents.
    pub fn from_powers(powers: impl IntoIterator<Item = (Variable, u32)>) -> Self {
        let mut map: BTreeMap<Variable, u32> = BTreeMap::new();
        for (var, exp) in powers {
            if exp > 0 {
                *map.entry(var).or_insert(0) += exp;
            }
        }
        Monomial {
            factors: map.into_iter().collect(),
        }
    }

    pub fn factors(&self) -> &[(Variable, u32)] {
        &self.factors
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn total_degree(&self) -> u32 {
        self.factors.iter().map(|&(_, e)| e).sum()
    }

    /// Product of two monomials: merge the sorted factor lists.
    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut factors = Vec::with_capacity(self.factors.len() + other.factors.len());
        let mut a = self.factors.iter().peekable();
        let mut b = other.factors.iter().peekable();
        loop {
            match (a.peek(), b.peek()) {
                (Some(&&(va, ea)), Some(&&(vb, eb))) => match va.cmp(&vb) {
                    Ordering::Less => {
                        factors.push((va, ea));
                        a.next();
                    }
                    Ordering::Greater => {
                        factors.push((vb, eb));
                        b.next();
                    }
                    Ordering::Equal => {
                        factors.push((va, ea + eb));
                        a.next();
                        b.next();
                    }
                },
                (Some(_), None) => {
                    factors.extend(a.by_ref().copied());
                    break;
                }
                (None, Some(_)) => {
                    factors.extend(b.by_ref().copied());
                    break;
                }
                (None, None) => break,
            }
        }
        Monomial { factors }
    }
}

/// Graded lexicographic order: total degree first, then the factor sequence
/// compared variable-ascending with larger exponents on earlier variables
/// ranking lower. Homogeneous terms therefore print in the familiar
/// `x1^2 + x1*x2 + x2^2` reading order.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| {
                let lhs = self.factors.iter().map(|&(v, e)| (v, std::cmp::Reverse(e)));
                let rhs = other.factors.iter().map(|&(v, e)| (v, std::cmp::Reverse(e)));
                lhs.cmp(rhs)
            })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        for (i, &(var, exp)) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            write!(f, "{var}")?;
            if exp > 1 {
                write!(f, "^{exp}")?;
            }
        }
        Ok(())
    }
}

/// A sparse polynomial with integer coefficients in canonical form: no zero
/// coefficients are stored and the term map iterates in monomial order.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, BigInt>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial::default()
    }

    pub fn one() -> Self {
        Polynomial::constant(1)
    }

    pub fn constant(value: impl Into<BigInt>) -> Self {
        let value = value.into();
        let mut terms = BTreeMap::new();
        if !value.is_zero() {
            terms.insert(Monomial::one(), value);
        }
        Polynomial { terms }
    }

    pub fn variable(var: Variable) -> Self {
        Polynomial::from_terms([(Monomial::variable(var), BigInt::one())])
    }

    /// Sums arbitrary `(monomial, coefficient)` pairs into canonical form.
    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, BigInt)>) -> Self {
        let mut p = Polynomial::zero();
        for (mono, coeff) in terms {
            p.add_term(mono, coeff);
        }
        p
    }

    fn add_term(&mut self, mono: Monomial, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(mono) {
            std::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut slot) => {
                *slot.get_mut() += coeff;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(&Monomial::one())
                .is_some_and(|c| c.is_one())
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in canonical monomial order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, mono: &Monomial) -> BigInt {
        self.terms.get(mono).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn constant_term(&self) -> BigInt {
        self.coefficient(&Monomial::one())
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (mono, coeff) in &other.terms {
            out.add_term(mono.clone(), coeff.clone());
        }
        out
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (mono, coeff) in &other.terms {
            out.add_term(mono.clone(), -coeff.clone());
        }
        out
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        self.mul_capped(other, usize::MAX)
            .expect("unlimited cap cannot be exceeded")
    }

    /// Product that abandons the computation as soon as the accumulating
    /// result holds more than `max_terms` terms, so a runaway product never
    /// materializes past the cap.
    pub fn mul_capped(&self, other: &Polynomial, max_terms: usize) -> Option<Polynomial> {
        if self.is_zero() || other.is_zero() {
            return Some(Polynomial::zero());
        }
        let mut out = Polynomial::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
                if out.terms.len() > max_terms {
                    return None;
                }
            }
        }
        Some(out)
    }

    pub fn scale(&self, factor: &BigInt) -> Polynomial {
        if factor.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c * factor))
                .collect(),
        }
    }

    /// JSON rendering: a list of `{"coeff": "<int>", "monomial": [[v,c,e],..]}`
    /// objects in canonical term order.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.terms
                .iter()
                .map(|(mono, coeff)| {
                    serde_json::json!({
                        "coeff": coeff.to_string(),
                        "monomial": mono
                            .factors()
                            .iter()
                            .map(|&(v, e)| serde_json::json!([v.vertex, v.color, e]))
                            .collect::<Vec<_>>(),
                    })
                })
                .collect(),
        )
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (mono, coeff)) in self.terms.iter().enumerate() {
            let negative = coeff.is_negative();
            if i == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let abs = coeff.abs();
            if mono.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{abs}*{mono}")?;
            }
        }
        Ok(())
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        Polynomial::add(self, rhs)
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        Polynomial::sub(self, rhs)
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        Polynomial::mul(self, rhs)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial::neg(self)
    }
}

/// Error raised by [`Polynomial::from_str`], with the byte offset of the
/// offending token.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at byte {position}: {message}")]
pub struct PolyParseError {
    pub position: usize,
    pub message: String,
}

impl PolyParseError {
    fn new(position: usize, message: impl Into<String>) -> Self {
        PolyParseError {
            position,
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Int(BigInt),
    Var(Variable),
    Plus,
    Minus,
    Star,
    Caret,
}

fn tokenize(input: &str) -> Result<Vec<(usize, Token)>, PolyParseError> {
    let bytes = input.as_bytes();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        match b {
            b' ' | b'\t' | b'\n' | b'\r' => i += 1,
            b'+' => {
                tokens.push((i, Token::Plus));
                i += 1;
            }
            b'-' => {
                tokens.push((i, Token::Minus));
                i += 1;
            }
            b'*' => {
                tokens.push((i, Token::Star));
                i += 1;
            }
            b'^' => {
                tokens.push((i, Token::Caret));
                i += 1;
            }
            b'0'..=b'9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let digits = &input[start..i];
                let value = BigInt::from_str(digits)
                    .map_err(|_| PolyParseError::new(start, "invalid integer"))?;
                tokens.push((start, Token::Int(value)));
            }
            b'x' => {
                let start = i;
                i += 1;
                let vstart = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if i == vstart {
                    return Err(PolyParseError::new(start, "expected vertex index after 'x'"));
                }
                let vertex: u64 = input[vstart..i]
                    .parse()
                    .map_err(|_| PolyParseError::new(vstart, "vertex index out of range"))?;
                if i >= bytes.len() || bytes[i] != b'_' {
                    return Err(PolyParseError::new(i, "expected '_' in variable"));
                }
                i += 1;
                let cstart = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if i == cstart {
                    return Err(PolyParseError::new(cstart, "expected color index after '_'"));
                }
                let color: u64 = input[cstart..i]
                    .parse()
                    .map_err(|_| PolyParseError::new(cstart, "color index out of range"))?;
                if vertex == 0 {
                    return Err(PolyParseError::new(vstart, "vertex index must be >= 1"));
                }
                if color == 0 {
                    return Err(PolyParseError::new(cstart, "color index must be >= 1"));
                }
                if vertex > u32::MAX as u64 || color > u32::MAX as u64 {
                    return Err(PolyParseError::new(start, "variable index too large"));
                }
                tokens.push((start, Token::Var(Variable::new(vertex as u32, color as u32))));
            }
            _ => {
                return Err(PolyParseError::new(
                    i,
                    format!("unexpected character '{}'", input[i..].chars().next().unwrap()),
                ));
            }
        }
    }
    Ok(tokens)
}

/// Parses the textual form produced by `Display`. The grammar is a signed
/// sum of products; each product multiplies integer and `x<v>_<c>[^e]`
/// factors separated by `*`, and whitespace is ignored.
impl FromStr for Polynomial {
    type Err = PolyParseError;

    fn from_str(input: &str) -> Result<Self, Self::Err> {
        let tokens = tokenize(input)?;
        if tokens.is_empty() {
            return Err(PolyParseError::new(0, "empty input"));
        }
        let mut result = Polynomial::zero();
        let mut pos = 0usize;
        let end = input.len();
        let mut first_term = true;
        while pos < tokens.len() {
            // Sign prefix: any run of +/- tokens collapses to one sign.
            // Terms after the first must be separated by a sign.
            let mut negative = false;
            let mut saw_sign = false;
            while pos < tokens.len() {
                match tokens[pos].1 {
                    Token::Plus => {
                        saw_sign = true;
                        pos += 1;
                    }
                    Token::Minus => {
                        negative = !negative;
                        saw_sign = true;
                        pos += 1;
                    }
                    _ => break,
                }
            }
            if !first_term && !saw_sign {
                return Err(PolyParseError::new(
                    tokens[pos].0,
                    "expected '+' or '-' between terms",
                ));
            }
            first_term = false;
            if pos >= tokens.len() {
                return Err(PolyParseError::new(end, "expected term after sign"));
            }
            // One product: factors separated by '*'.
            let mut coeff = BigInt::one();
            let mut powers: Vec<(Variable, u32)> = Vec::new();
            loop {
                let (at, token) = &tokens[pos];
                match token {
                    Token::Int(value) => {
                        coeff *= value;
                        pos += 1;
                    }
                    Token::Var(var) => {
                        pos += 1;
                        let mut exp = 1u32;
                        if pos < tokens.len() && tokens[pos].1 == Token::Caret {
                            pos += 1;
                            match tokens.get(pos) {
                                Some((_, Token::Int(value))) => {
                                    exp = u32::try_from(value.clone()).map_err(|_| {
                                        PolyParseError::new(tokens[pos].0, "exponent out of range")
                                    })?;
                                    if exp == 0 {
                                        return Err(PolyParseError::new(
                                            tokens[pos].0,
                                            "exponent must be >= 1",
                                        ));
                                    }
                                    pos += 1;
                                }
                                _ => {
                                    return Err(PolyParseError::new(
                                        tokens.get(pos).map_or(end, |t| t.0),
                                        "expected exponent after '^'",
                                    ));
                                }
                            }
                        }
                        powers.push((*var, exp));
                    }
                    _ => {
                        return Err(PolyParseError::new(*at, "expected integer or variable"));
                    }
                }
                if pos < tokens.len() && tokens[pos].1 == Token::Star {
                    pos += 1;
                    if pos >= tokens.len() {
                        return Err(PolyParseError::new(end, "expected factor after '*'"));
                    }
                } else {
                    break;
                }
            }
            if negative {
                coeff = -coeff;
            }
            result.add_term(Monomial::from_powers(powers), coeff);
        }
        Ok(result)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn var(v: u32, c: u32) -> Variable {
        Variable::new(v, c)
    }

    fn xp(v: u32, c: u32) -> Polynomial {
        Polynomial::variable(var(v, c))
    }

    #[test]
    fn additive_identity_and_cancellation() {
        let p = Polynomial::one().add(&xp(2, 1));
        assert_eq!(Polynomial::zero().add(&p), p);
        assert!(xp(1, 1).add(&xp(1, 1).neg()).is_zero());
    }

    #[test]
    fn coefficient_accumulation() {
        let lhs = Polynomial::one().add(&xp(2, 1)).add(&xp(2, 1));
        let expected: Polynomial = "1 + 2*x2_1".parse().unwrap();
        assert_eq!(lhs, expected);
    }

    #[test]
    fn distributes_one_plus_x() {
        // (1 + x_i^(1)) * x_j^(2) = x_j^(2) + x_i^(1) x_j^(2), with i=1, j=2.
        let lhs = Polynomial::one().add(&xp(1, 1)).mul(&xp(2, 2));
        let expected = xp(2, 2).add(&xp(1, 1).mul(&xp(2, 2)));
        assert_eq!(lhs, expected);
        assert_eq!(lhs.to_string(), "x2_2 + x1_1*x2_2");
    }

    #[test]
    fn square_of_binomial() {
        // (x_i^(1) + x_j^(2))^2 commutes to squares plus a doubled cross term.
        let sum = xp(1, 1).add(&xp(2, 2));
        let square = sum.mul(&sum);
        let expected: Polynomial = "x1_1^2 + 2*x1_1*x2_2 + x2_2^2".parse().unwrap();
        assert_eq!(square, expected);
    }

    #[test]
    fn multiplicative_identity() {
        let p: Polynomial = "3 + x1_2*x4_1 - 2*x2_2".parse().unwrap();
        assert_eq!(p.mul(&Polynomial::one()), p);
    }

    #[test]
    fn negation_formats() {
        assert_eq!(Polynomial::zero().neg().to_string(), "0");
        let p = Polynomial::one().add(&xp(1, 1));
        assert_eq!(p.neg().to_string(), "-1 - x1_1");
    }

    #[test]
    fn format_ordering() {
        assert_eq!(Polynomial::zero().to_string(), "0");
        assert_eq!(Polynomial::one().add(&xp(1, 3)).to_string(), "1 + x1_3");
        let m = xp(1, 2).mul(&xp(2, 1)).mul(&xp(4, 3));
        assert_eq!(m.to_string(), "x1_2*x2_1*x4_3");
    }

    #[test]
    fn parse_round_trip_examples() {
        let p: Polynomial = "1 + x1_3".parse().unwrap();
        assert_eq!(p, Polynomial::one().add(&xp(1, 3)));

        let sq: Polynomial = "x2_1*x2_1".parse().unwrap();
        assert_eq!(sq.to_string(), "x2_1^2");
    }

    #[test]
    fn parse_rejects_zero_indices() {
        let err = "x0_1".parse::<Polynomial>().unwrap_err();
        assert!(err.message.contains(">= 1"), "{err}");
        assert!("x1_0".parse::<Polynomial>().is_err());
    }

    #[test]
    fn parse_reports_position() {
        let err = "1 + ?".parse::<Polynomial>().unwrap_err();
        assert_eq!(err.position, 4);
    }

    #[test]
    fn parse_requires_signs_between_terms() {
        let err = "5 5".parse::<Polynomial>().unwrap_err();
        assert!(err.message.contains("between terms"), "{err}");
        assert!("x1_1 x2_1".parse::<Polynomial>().is_err());
        let p: Polynomial = " - 5 + + x1_1 ".parse().unwrap();
        assert_eq!(p.to_string(), "-5 + x1_1");
    }

    #[test]
    fn monomial_order_is_graded() {
        let one = Monomial::one();
        let x11 = Monomial::variable(var(1, 1));
        let x12 = Monomial::variable(var(1, 2));
        let x21 = Monomial::variable(var(2, 1));
        assert!(one < x11);
        assert!(x11 < x12);
        assert!(x12 < x21);
        let x11sq = x11.mul(&x11);
        let cross = x11.mul(&x21);
        let x21sq = x21.mul(&x21);
        assert!(x21 < x11sq);
        assert!(x11sq < cross);
        assert!(cross < x21sq);
    }

    #[test]
    fn json_rendering_is_canonical() {
        let p: Polynomial = "2*x1_1 - 1 + x1_1*x2_3^2".parse().unwrap();
        let json = serde_json::to_string(&p.to_json()).unwrap();
        assert_eq!(
            json,
            "[{\"coeff\":\"-1\",\"monomial\":[]},\
             {\"coeff\":\"2\",\"monomial\":[[1,1,1]]},\
             {\"coeff\":\"1\",\"monomial\":[[1,1,1],[2,3,2]]}]"
        );
    }

    prop_compose! {
        fn arb_monomial()(powers in prop::collection::vec(((1u32..5, 1u32..4), 1u32..3), 0..4)) -> Monomial {
            Monomial::from_powers(powers.into_iter().map(|((v, c), e)| (Variable::new(v, c), e)))
        }
    }

    prop_compose! {
        fn arb_poly()(terms in prop::collection::vec((arb_monomial(), -9i64..=9), 0..8)) -> Polynomial {
            Polynomial::from_terms(terms.into_iter().map(|(m, c)| (m, BigInt::from(c))))
        }
    }

    proptest! {
        #[test]
        fn ring_axioms(p in arb_poly(), q in arb_poly(), r in arb_poly()) {
            prop_assert_eq!(p.add(&q), q.add(&p));
            prop_assert_eq!(p.add(&q).add(&r), p.add(&q.add(&r)));
            prop_assert_eq!(p.mul(&q), q.mul(&p));
            prop_assert_eq!(p.mul(&q).mul(&r), p.mul(&q.mul(&r)));
            prop_assert_eq!(p.mul(&q.add(&r)), p.mul(&q).add(&p.mul(&r)));
            prop_assert_eq!(p.add(&Polynomial::zero()), p.clone());
            prop_assert_eq!(p.mul(&Polynomial::one()), p.clone());
            prop_assert!(p.add(&p.neg()).is_zero());
        }

        #[test]
        fn format_parse_round_trip(p in arb_poly()) {
            let parsed: Polynomial = p.to_string().parse().unwrap();
            prop_assert_eq!(parsed, p);
        }

        #[test]
        fn canonical_form_is_idempotent(p in arb_poly()) {
            let rebuilt = Polynomial::from_terms(
                p.terms().map(|(m, c)| (m.clone(), c.clone())),
            );
            prop_assert_eq!(rebuilt, p);
        }
    }
}
