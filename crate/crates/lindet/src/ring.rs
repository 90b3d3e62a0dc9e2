//! Exact coefficient arithmetic: arbitrary-precision rationals and sparse
//! integer-coefficient multivariate polynomials behind one [`Weight`] type.
//!
//! Every value is kept in canonical form (no zero coefficients, no zero
//! exponents, fixed term order), so an identity holds exactly when `==`
//! says so and rendering is byte-deterministic.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational scalar.
pub type Rational = BigRational;

/// Coefficient domain of a computation.
///
/// A computation runs in exactly one mode; combining weights of different
/// modes is an error, never a silent coercion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Mode {
    Rational,
    Symbolic,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mode::Rational => f.write_str("rational"),
            Mode::Symbolic => f.write_str("symbolic"),
        }
    }
}

fn valid_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Power product of variables. Exponents are strictly positive; the empty
/// monomial is the multiplicative unit.
///
/// Ordering is the derived lexicographic order on (variable, exponent)
/// pairs, which fixes term order everywhere a polynomial is rendered.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial(BTreeMap<String, u32>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(BTreeMap::new())
    }

    /// Single variable to the first power. Panics on a malformed
    /// identifier; user input goes through [`Literal::parse`] instead.
    pub fn var(name: &str) -> Self {
        assert!(valid_identifier(name), "invalid variable name {name:?}");
        let mut m = BTreeMap::new();
        m.insert(name.to_string(), 1);
        Monomial(m)
    }

    /// Builds from (variable, exponent) pairs, accumulating duplicates and
    /// dropping zero exponents.
    pub fn from_pairs<I: IntoIterator<Item = (String, u32)>>(pairs: I) -> Self {
        let mut m: BTreeMap<String, u32> = BTreeMap::new();
        for (v, e) in pairs {
            if e == 0 {
                continue;
            }
            *m.entry(v).or_insert(0) += e;
        }
        Monomial(m)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut m = self.0.clone();
        for (v, e) in &other.0 {
            *m.entry(v.clone()).or_insert(0) += e;
        }
        Monomial(m)
    }

    pub fn exponents(&self) -> impl Iterator<Item = (&str, u32)> {
        self.0.iter().map(|(v, e)| (v.as_str(), *e))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        let mut first = true;
        for (v, e) in &self.0 {
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Sparse multivariate polynomial with integer coefficients.
///
/// Invariant: no stored coefficient is zero, so structural equality is
/// mathematical equality and `is_zero` is `terms.is_empty()`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct MPoly {
    terms: BTreeMap<Monomial, BigInt>,
}

impl MPoly {
    pub fn zero() -> Self {
        MPoly::default()
    }

    pub fn one() -> Self {
        MPoly::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(), c);
        }
        MPoly { terms }
    }

    /// Single variable. Panics on a malformed identifier.
    pub fn var(name: &str) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Monomial::var(name), BigInt::one());
        MPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The constant value if this polynomial has no variable term.
    pub fn constant_value(&self) -> Option<BigInt> {
        match self.terms.len() {
            0 => Some(BigInt::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> MPoly {
        MPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &MPoly) -> MPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &MPoly) -> MPoly {
        let mut out = MPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    pub fn mul_int(&self, k: &BigInt) -> MPoly {
        if k.is_zero() {
            return MPoly::zero();
        }
        MPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect(),
        }
    }

    /// All variables with a nonzero occurrence.
    pub fn variables(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        for m in self.terms.keys() {
            for (v, _) in m.exponents() {
                out.insert(v.to_string());
            }
        }
        out
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    /// Evaluates at a rational point. Every variable occurring in the
    /// polynomial must be assigned.
    pub fn eval(&self, assignment: &BTreeMap<String, Rational>) -> Result<Rational> {
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut term = Rational::from(c.clone());
            for (v, e) in m.exponents() {
                let val = assignment
                    .get(v)
                    .ok_or_else(|| Error::MissingVariable(v.to_string()))?;
                term *= rational_pow(val, e);
            }
            acc += term;
        }
        Ok(acc)
    }
}

fn rational_pow(r: &Rational, e: u32) -> Rational {
    Rational::new_raw(r.numer().pow(e), r.denom().pow(e))
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
                first = false;
            } else if neg {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            if m.is_one() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{mag}*{m}")?;
            }
        }
        Ok(())
    }
}

/// Edge weight / matrix entry: an exact rational or an exact polynomial,
/// tagged by [`Mode`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Weight {
    Rational(Rational),
    Poly(MPoly),
}

impl Weight {
    pub fn mode(&self) -> Mode {
        match self {
            Weight::Rational(_) => Mode::Rational,
            Weight::Poly(_) => Mode::Symbolic,
        }
    }

    pub fn zero(mode: Mode) -> Weight {
        match mode {
            Mode::Rational => Weight::Rational(Rational::zero()),
            Mode::Symbolic => Weight::Poly(MPoly::zero()),
        }
    }

    pub fn one(mode: Mode) -> Weight {
        match mode {
            Mode::Rational => Weight::Rational(Rational::one()),
            Mode::Symbolic => Weight::Poly(MPoly::one()),
        }
    }

    pub fn from_int(k: i64, mode: Mode) -> Weight {
        match mode {
            Mode::Rational => Weight::Rational(Rational::from(BigInt::from(k))),
            Mode::Symbolic => Weight::Poly(MPoly::constant(BigInt::from(k))),
        }
    }

    pub fn rational(r: Rational) -> Weight {
        Weight::Rational(r)
    }

    /// Symbolic variable. Panics on a malformed identifier.
    pub fn var(name: &str) -> Weight {
        Weight::Poly(MPoly::var(name))
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Weight::Rational(r) => r.is_zero(),
            Weight::Poly(p) => p.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Weight::Rational(r) => r.is_one(),
            Weight::Poly(p) => p.constant_value().is_some_and(|c| c.is_one()),
        }
    }

    fn check_mode(&self, other: &Weight) -> Result<()> {
        if self.mode() == other.mode() {
            Ok(())
        } else {
            Err(Error::ModeMismatch {
                left: self.mode(),
                right: other.mode(),
            })
        }
    }

    pub fn add(&self, other: &Weight) -> Result<Weight> {
        self.check_mode(other)?;
        Ok(match (self, other) {
            (Weight::Rational(a), Weight::Rational(b)) => Weight::Rational(a + b),
            (Weight::Poly(a), Weight::Poly(b)) => Weight::Poly(a.add(b)),
            _ => unreachable!(),
        })
    }

    pub fn sub(&self, other: &Weight) -> Result<Weight> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Weight) -> Result<Weight> {
        self.check_mode(other)?;
        Ok(match (self, other) {
            (Weight::Rational(a), Weight::Rational(b)) => Weight::Rational(a * b),
            (Weight::Poly(a), Weight::Poly(b)) => Weight::Poly(a.mul(b)),
            _ => unreachable!(),
        })
    }

    pub fn neg(&self) -> Weight {
        match self {
            Weight::Rational(r) => Weight::Rational(-r),
            Weight::Poly(p) => Weight::Poly(p.neg()),
        }
    }

    /// Exact division, rational mode only.
    pub fn div(&self, other: &Weight) -> Result<Weight> {
        match (self, other) {
            (Weight::Rational(a), Weight::Rational(b)) => {
                if b.is_zero() {
                    Err(Error::InvalidInput("division by zero".into()))
                } else {
                    Ok(Weight::Rational(a / b))
                }
            }
            _ => Err(Error::SymbolicDivision),
        }
    }

    /// Evaluates at a rational point; a rational weight passes through.
    pub fn eval(&self, assignment: &BTreeMap<String, Rational>) -> Result<Rational> {
        match self {
            Weight::Rational(r) => Ok(r.clone()),
            Weight::Poly(p) => p.eval(assignment),
        }
    }

    /// Parses the canonical rendering produced by `Display`, in the given
    /// mode. Inverse of `to_string` on every reachable value; used by the
    /// report round-trip guarantee. Not the input-file grammar, which
    /// admits single literals only (see [`Literal::parse`]).
    pub fn parse_canonical(s: &str, mode: Mode) -> Result<Weight> {
        match mode {
            Mode::Rational => parse_canonical_rational(s),
            Mode::Symbolic => parse_canonical_poly(s),
        }
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Weight::Rational(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Weight::Poly(p) => write!(f, "{p}"),
        }
    }
}

fn parse_canonical_rational(s: &str) -> Result<Weight> {
    match Literal::parse(s)? {
        Literal::Int(n) => Ok(Weight::Rational(Rational::from(n))),
        Literal::Ratio(n, d) => Ok(Weight::Rational(Rational::new(n, d))),
        Literal::Var(v) => Err(Error::Parse(format!(
            "variable `{v}` is not a rational value"
        ))),
    }
}

struct Scanner<'a> {
    src: &'a str,
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Scanner<'a> {
    fn new(src: &'a str) -> Self {
        Scanner {
            src,
            bytes: src.as_bytes(),
            pos: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Result<&'a str> {
        let start = self.pos;
        while self.peek().is_some_and(|b| b.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start {
            Err(self.fail("expected digits"))
        } else {
            Ok(&self.src[start..self.pos])
        }
    }

    fn identifier(&mut self) -> Result<&'a str> {
        let start = self.pos;
        if !self.peek().is_some_and(|b| b.is_ascii_alphabetic()) {
            return Err(self.fail("expected identifier"));
        }
        self.pos += 1;
        while self
            .peek()
            .is_some_and(|b| b.is_ascii_alphanumeric() || b == b'_')
        {
            self.pos += 1;
        }
        Ok(&self.src[start..self.pos])
    }

    fn fail(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} at byte {} of {:?}", self.pos, self.src))
    }
}

fn parse_canonical_poly(s: &str) -> Result<Weight> {
    let mut sc = Scanner::new(s);
    let mut acc = MPoly::zero();
    sc.skip_ws();
    let mut negative = sc.eat(b'-');
    loop {
        sc.skip_ws();
        let mut coeff = BigInt::one();
        let mut mono: Option<Monomial> = None;
        if sc.peek().is_some_and(|b| b.is_ascii_digit()) {
            coeff = sc.digits()?.parse().expect("digit run is a valid BigInt");
            let save = sc.pos;
            sc.skip_ws();
            if sc.eat(b'*') {
                sc.skip_ws();
                mono = Some(parse_monomial(&mut sc)?);
            } else {
                sc.pos = save;
            }
        } else if sc.peek().is_some_and(|b| b.is_ascii_alphabetic()) {
            mono = Some(parse_monomial(&mut sc)?);
        } else {
            return Err(sc.fail("expected term"));
        }
        if negative {
            coeff = -coeff;
        }
        acc.add_term(mono.unwrap_or_else(Monomial::one), coeff);
        sc.skip_ws();
        match sc.peek() {
            None => break,
            Some(b'+') => {
                sc.pos += 1;
                negative = false;
            }
            Some(b'-') => {
                sc.pos += 1;
                negative = true;
            }
            Some(_) => return Err(sc.fail("expected `+`, `-`, or end")),
        }
    }
    Ok(Weight::Poly(acc))
}

fn parse_monomial(sc: &mut Scanner<'_>) -> Result<Monomial> {
    let mut pairs = Vec::new();
    loop {
        let name = sc.identifier()?;
        let exp: u32 = if sc.eat(b'^') {
            let d = sc.digits()?;
            d.parse()
                .map_err(|_| Error::Parse(format!("exponent {d} out of range")))?
        } else {
            1
        };
        if exp == 0 {
            return Err(Error::Parse("zero exponent is not canonical".into()));
        }
        pairs.push((name.to_string(), exp));
        let save = sc.pos;
        sc.skip_ws();
        if sc.eat(b'*') {
            sc.skip_ws();
            if sc.peek().is_some_and(|b| b.is_ascii_alphabetic()) {
                continue;
            }
            return Err(sc.fail("expected variable after `*`"));
        }
        sc.pos = save;
        break;
    }
    Ok(Monomial::from_pairs(pairs))
}

/// One weight literal from an input file: a signed integer, a fraction
/// `p/q`, or a variable name. The bare name `x` is rejected because the
/// characteristic polynomial reserves it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Literal {
    Int(BigInt),
    Ratio(BigInt, BigInt),
    Var(String),
}

impl Literal {
    pub fn parse(s: &str) -> Result<Literal> {
        let t = s.trim();
        if t.is_empty() {
            return Err(Error::Parse("empty weight literal".into()));
        }
        if t == "x" {
            return Err(Error::ReservedVariable);
        }
        if valid_identifier(t) {
            return Ok(Literal::Var(t.to_string()));
        }
        if let Some((num, den)) = t.split_once('/') {
            let n: BigInt = parse_signed_int(num.trim())
                .ok_or_else(|| Error::Parse(format!("bad numerator in {t:?}")))?;
            let d: BigInt = den
                .trim()
                .bytes()
                .all(|b| b.is_ascii_digit())
                .then(|| den.trim().parse().ok())
                .flatten()
                .ok_or_else(|| Error::Parse(format!("bad denominator in {t:?}")))?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {t:?}")));
            }
            return Ok(Literal::Ratio(n, d));
        }
        parse_signed_int(t)
            .map(Literal::Int)
            .ok_or_else(|| Error::Parse(format!("invalid weight literal {t:?}")))
    }

    pub fn is_var(&self) -> bool {
        matches!(self, Literal::Var(_))
    }

    /// Mode implied by a batch of literals: symbolic as soon as any
    /// variable appears, rational otherwise.
    pub fn infer_mode<'a, I: IntoIterator<Item = &'a Literal>>(lits: I) -> Mode {
        if lits.into_iter().any(Literal::is_var) {
            Mode::Symbolic
        } else {
            Mode::Rational
        }
    }

    pub fn to_weight(&self, mode: Mode) -> Result<Weight> {
        match (self, mode) {
            (Literal::Int(n), Mode::Rational) => Ok(Weight::Rational(Rational::from(n.clone()))),
            (Literal::Int(n), Mode::Symbolic) => Ok(Weight::Poly(MPoly::constant(n.clone()))),
            (Literal::Ratio(n, d), Mode::Rational) => {
                Ok(Weight::Rational(Rational::new(n.clone(), d.clone())))
            }
            (Literal::Ratio(n, d), Mode::Symbolic) => Err(Error::InvalidInput(format!(
                "fraction {n}/{d} cannot appear in a symbolic computation"
            ))),
            (Literal::Var(v), Mode::Rational) => Err(Error::InvalidInput(format!(
                "variable `{v}` cannot appear in a rational computation"
            ))),
            (Literal::Var(v), Mode::Symbolic) => Ok(Weight::var(v)),
        }
    }
}

fn parse_signed_int(s: &str) -> Option<BigInt> {
    let body = s.strip_prefix('-').or_else(|| s.strip_prefix('+')).unwrap_or(s);
    if body.is_empty() || !body.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}
