//! Parsers for the expression language used on the command line.
//!
//! A module expression is a signed sum of terms, each an optional positive
//! integer multiplicity, `*`, and one class descriptor:
//!
//! * `(f)^s` — the class of k[x]/f(x)^s; `f` must be monic irreducible with
//!   a nonzero constant term, and `^s` defaults to `^1`;
//! * `x^s` (or bare `x`) — the nilpotent class of k[x]/x^s;
//! * `J(a,s)` — a Jordan class over the real-closed model, `a` a nonzero
//!   rational;
//! * `R(a+bi,s)` — a rotation class over the real-closed model.
//!
//! Quiver expressions use `S(i,j)` (the string supported on positions
//! `i..=j`) and `B(f,s)` (a band class) instead of the last two.
//!
//! Polynomials are signed sums of `c`, `c*x^e`, and `x^e` with rational `c`.
//! Whitespace is insignificant everywhere.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use repring_core::quiver::{BandDesc, QuiverClass, QuiverRingElement, QuiverShape, StringDesc};
use repring_core::{Field, FieldElement, GaussianRational, Indecomposable, Polynomial, RingElement};
use std::fmt;

/// Longest string the parser accepts; inputs past this are rejected before
/// any arithmetic touches them.
const MAX_INPUT_LEN: usize = 1 << 16;
/// Largest exponent / multiplicity literal; keeps dimensions sane before the
/// matrix layer's own caps kick in.
const MAX_SMALL_INT: u64 = 1 << 20;

/// A syntax or validation error, carrying the byte offset it was raised at.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub pos: usize,
    pub msg: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at position {}", self.msg, self.pos)
    }
}

impl std::error::Error for ParseError {}

/// Renders a parse error with a caret line pointing into the source.
pub fn error_with_caret(src: &str, err: &ParseError) -> String {
    let pos = err.pos.min(src.len());
    format!("{}\n  {}\n  {}^", err, src, " ".repeat(pos))
}

/// Maps a `--field` flag value (`q`, `rc`, or `f<p>`) to a field.
pub fn parse_field_flag(flag: &str) -> Result<Field, String> {
    match flag {
        "q" => Ok(Field::rationals()),
        "rc" => Ok(Field::real_closed()),
        _ => {
            if let Some(rest) = flag.strip_prefix('f') {
                if !rest.is_empty() && rest.bytes().all(|b| b.is_ascii_digit()) {
                    let p: u64 = rest
                        .parse()
                        .map_err(|_| format!("field characteristic '{rest}' is out of range"))?;
                    return Field::prime(p).map_err(|e| e.to_string());
                }
            }
            Err(format!("unknown field '{flag}' (expected q, rc, or f<p> with p prime)"))
        }
    }
}

struct Cursor<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str) -> Result<Cursor<'a>, ParseError> {
        if src.len() > MAX_INPUT_LEN {
            return Err(ParseError {
                pos: MAX_INPUT_LEN,
                msg: format!("expression longer than {MAX_INPUT_LEN} bytes"),
            });
        }
        Ok(Cursor { src: src.as_bytes(), pos: 0 })
    }

    fn err<T>(&self, pos: usize, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError { pos, msg: msg.into() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    /// Next byte after whitespace, without consuming it.
    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    /// Consumes `c` (after whitespace) if it is next.
    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(self.pos, format!("expected '{}'", c as char))
        }
    }

    fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    /// Unsigned decimal integer, bounded by `MAX_SMALL_INT`.
    fn parse_uint(&mut self) -> Result<u64, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let mut value: u64 = 0;
        while let Some(&b) = self.src.get(self.pos) {
            if !b.is_ascii_digit() {
                break;
            }
            value = value * 10 + u64::from(b - b'0');
            if value > MAX_SMALL_INT {
                return self.err(start, format!("integer larger than {MAX_SMALL_INT}"));
            }
            self.pos += 1;
        }
        if self.pos == start {
            return self.err(start, "expected an integer");
        }
        Ok(value)
    }

    /// Unsigned decimal integer of arbitrary size (used inside scalars).
    fn parse_big_uint(&mut self) -> Result<BigInt, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while let Some(&b) = self.src.get(self.pos) {
            if !b.is_ascii_digit() {
                break;
            }
            self.pos += 1;
        }
        if self.pos == start {
            return self.err(start, "expected an integer");
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok(text.parse().unwrap())
    }

    /// Optional sign, as a multiplier.
    fn parse_sign(&mut self) -> i64 {
        if self.eat(b'-') {
            -1
        } else {
            self.eat(b'+');
            1
        }
    }

    /// Unsigned rational: `a` or `a/b`.
    fn parse_unsigned_rational(&mut self) -> Result<BigRational, ParseError> {
        let num = self.parse_big_uint()?;
        if self.eat(b'/') {
            let dpos = self.pos;
            let den = self.parse_big_uint()?;
            if den.is_zero() {
                return self.err(dpos, "zero denominator");
            }
            Ok(BigRational::new(num, den))
        } else {
            Ok(BigRational::from_integer(num))
        }
    }

    /// Signed rational: `[+-] a[/b]`.
    fn parse_rational(&mut self) -> Result<BigRational, ParseError> {
        let sign = self.parse_sign();
        let r = self.parse_unsigned_rational()?;
        Ok(if sign < 0 { -r } else { r })
    }

    /// Gaussian rational in `a`, `bi`, or `a+bi` form (`i` alone means 1i).
    fn parse_gauss(&mut self) -> Result<GaussianRational, ParseError> {
        let sign = self.parse_sign();
        let spos = self.pos;
        let (mut re, mut im) = (BigRational::zero(), BigRational::zero());
        let mut first_imaginary = false;
        if self.eat(b'i') {
            im = signed(BigRational::from_integer(BigInt::from(1)), sign);
            first_imaginary = true;
        } else {
            let r = self.parse_unsigned_rational()?;
            if self.eat(b'i') {
                im = signed(r, sign);
                first_imaginary = true;
            } else {
                re = signed(r, sign);
            }
        }
        match self.peek() {
            Some(b'+') | Some(b'-') => {
                if first_imaginary {
                    return self.err(spos, "write complex parameters as a+bi (real part first)");
                }
                let sign2 = self.parse_sign();
                if self.eat(b'i') {
                    im = signed(BigRational::from_integer(BigInt::from(1)), sign2);
                } else {
                    let ipos = self.pos;
                    let r = self.parse_unsigned_rational()?;
                    if !self.eat(b'i') {
                        return self.err(ipos, "expected 'i' after the imaginary part");
                    }
                    im = signed(r, sign2);
                }
            }
            _ => {}
        }
        Ok(GaussianRational::new(re, im))
    }

    /// Polynomial in `x`: signed sum of `c`, `c*x^e`, `x^e`, `x`.
    /// Stops (without consuming) at any byte in `stops`.
    fn parse_poly(&mut self, k: &Field, stops: &[u8]) -> Result<Polynomial, ParseError> {
        let mut coeffs: Vec<BigRational> = Vec::new();
        let mut sign = self.parse_sign();
        loop {
            self.skip_ws();
            let tpos = self.pos;
            let (coeff, exp) = match self.peek() {
                Some(b) if b.is_ascii_digit() => {
                    let c = self.parse_unsigned_rational()?;
                    if self.eat(b'*') {
                        self.expect(b'x')?;
                        (c, self.parse_exponent()?)
                    } else {
                        (c, 0)
                    }
                }
                Some(b'x') => {
                    self.pos += 1;
                    (BigRational::from_integer(BigInt::from(1)), self.parse_exponent()?)
                }
                _ => return self.err(tpos, "expected a polynomial term"),
            };
            if coeffs.len() <= exp {
                coeffs.resize(exp + 1, BigRational::zero());
            }
            let add = signed(coeff, sign);
            coeffs[exp] += add;
            match self.peek() {
                None => break,
                Some(b) if stops.contains(&b) => break,
                Some(b'+') | Some(b'-') => sign = self.parse_sign(),
                Some(_) => return self.err(self.pos, "expected '+', '-', or end of polynomial"),
            }
        }
        let fe: Result<Vec<FieldElement>, ParseError> =
            coeffs.iter().map(|c| rational_to_field(c, k, self.pos)).collect();
        Ok(Polynomial::from_coeffs(fe?))
    }

    /// Optional `^e` with `e >= 1`; absent means 1.
    fn parse_exponent(&mut self) -> Result<usize, ParseError> {
        if self.eat(b'^') {
            let pos = self.pos;
            let e = self.parse_uint()?;
            if e == 0 {
                return self.err(pos, "exponent must be positive");
            }
            Ok(e as usize)
        } else {
            Ok(1)
        }
    }

    /// `^s` with `s >= 1`, defaulting to 1, as a class power.
    fn parse_power(&mut self) -> Result<u32, ParseError> {
        Ok(self.parse_exponent()? as u32)
    }
}

fn signed(r: BigRational, sign: i64) -> BigRational {
    if sign < 0 {
        -r
    } else {
        r
    }
}

/// Coerces an exact rational into `k`, inverting the denominator in prime
/// characteristic (where it must be a unit).
fn rational_to_field(r: &BigRational, k: &Field, pos: usize) -> Result<FieldElement, ParseError> {
    match k.characteristic() {
        0 => Ok(k.from_rational(r.clone())),
        p => {
            let pb = BigInt::from(p);
            let num = ((r.numer() % &pb) + &pb) % &pb;
            let den = ((r.denom() % &pb) + &pb) % &pb;
            if den.is_zero() {
                return Err(ParseError {
                    pos,
                    msg: format!("denominator divisible by the characteristic {p}"),
                });
            }
            let num_fe = k.from_i64(i64::try_from(num).unwrap());
            let den_fe = k.from_i64(i64::try_from(den).unwrap());
            Ok(k.div(&num_fe, &den_fe).expect("unit denominator"))
        }
    }
}

/// Parses a complete polynomial (the whole string).
pub fn parse_poly(src: &str, k: &Field) -> Result<Polynomial, ParseError> {
    let mut cur = Cursor::new(src)?;
    let f = cur.parse_poly(k, &[])?;
    if !cur.at_end() {
        return cur.err(cur.pos, "unexpected trailing input");
    }
    Ok(f)
}

/// Parses a module expression over `k` into a ring element.
///
/// The literal `0` (optionally signed) is the zero element; otherwise every
/// term must name a class, and descriptors are validated as they are parsed.
pub fn parse_module_expr(src: &str, k: &Field) -> Result<RingElement, ParseError> {
    let mut cur = Cursor::new(src)?;
    let mut out = RingElement::zero(k);
    if cur.at_end() {
        return cur.err(0, "empty expression");
    }
    let mut sign = cur.parse_sign();
    loop {
        cur.skip_ws();
        let tpos = cur.pos;
        let mut coeff: i64 = 1;
        let mut saw_coeff = false;
        if matches!(cur.peek(), Some(b) if b.is_ascii_digit()) {
            let c = cur.parse_uint()?;
            coeff = c as i64;
            saw_coeff = true;
            if cur.eat(b'/') {
                return cur.err(tpos, "multiplicities must be integers");
            }
        }
        let explicit_star = saw_coeff && cur.eat(b'*');
        if saw_coeff && !explicit_star {
            // A bare integer is only meaningful as the zero element.
            if coeff != 0 {
                return cur.err(tpos, "a bare integer is not a module term (write c*term)");
            }
        } else {
            let ind = parse_ring_atom(&mut cur, k, tpos)?;
            out.insert_checked(ind, sign * coeff, k)
                .map_err(|e| ParseError { pos: tpos, msg: e.to_string() })?;
        }
        if cur.at_end() {
            break;
        }
        match cur.peek() {
            Some(b'+') | Some(b'-') => sign = cur.parse_sign(),
            _ => return cur.err(cur.pos, "expected '+', '-', or end of expression"),
        }
    }
    Ok(out)
}

fn parse_ring_atom(
    cur: &mut Cursor<'_>,
    k: &Field,
    tpos: usize,
) -> Result<Indecomposable, ParseError> {
    let to_parse_err = |e: repring_core::RingError| ParseError { pos: tpos, msg: e.to_string() };
    match cur.peek() {
        Some(b'(') => {
            cur.pos += 1;
            let f = cur.parse_poly(k, &[b')'])?;
            cur.expect(b')')?;
            let s = cur.parse_power()?;
            Indecomposable::band(&f, s, k).map_err(to_parse_err)
        }
        Some(b'x') => {
            cur.pos += 1;
            let s = cur.parse_power()?;
            Ok(Indecomposable::nil(s))
        }
        Some(b'J') => {
            cur.pos += 1;
            cur.expect(b'(')?;
            let lambda = cur.parse_rational()?;
            cur.expect(b',')?;
            let s = positive_u32(cur)?;
            cur.expect(b')')?;
            Indecomposable::jordan(lambda, s).map_err(to_parse_err)
        }
        Some(b'R') => {
            cur.pos += 1;
            cur.expect(b'(')?;
            let lambda = cur.parse_gauss()?;
            cur.expect(b',')?;
            let s = positive_u32(cur)?;
            cur.expect(b')')?;
            Indecomposable::rot(lambda, s).map_err(to_parse_err)
        }
        Some(b'S') | Some(b'B') => {
            cur.err(tpos, "S(...) and B(...) are quiver terms; use the quiver command")
        }
        _ => cur.err(tpos, "expected a module term"),
    }
}

fn positive_u32(cur: &mut Cursor<'_>) -> Result<u32, ParseError> {
    let pos = cur.pos;
    let s = cur.parse_uint()?;
    if s == 0 {
        return cur.err(pos, "size must be positive");
    }
    Ok(s as u32)
}

/// Parses a quiver expression (`S(i,j)` / `B(f,s)` terms) over `k`.
pub fn parse_quiver_expr(
    src: &str,
    shape: &QuiverShape,
    k: &Field,
) -> Result<QuiverRingElement, ParseError> {
    let mut cur = Cursor::new(src)?;
    let mut out = QuiverRingElement::zero(shape, k);
    if cur.at_end() {
        return cur.err(0, "empty expression");
    }
    let mut sign = cur.parse_sign();
    loop {
        cur.skip_ws();
        let tpos = cur.pos;
        let mut coeff: i64 = 1;
        let mut saw_coeff = false;
        if matches!(cur.peek(), Some(b) if b.is_ascii_digit()) {
            coeff = cur.parse_uint()? as i64;
            saw_coeff = true;
            if cur.eat(b'/') {
                return cur.err(tpos, "multiplicities must be integers");
            }
        }
        let explicit_star = saw_coeff && cur.eat(b'*');
        if saw_coeff && !explicit_star {
            if coeff != 0 {
                return cur.err(tpos, "a bare integer is not a quiver term (write c*term)");
            }
        } else {
            let class = parse_quiver_atom(&mut cur, shape, k, tpos)?;
            out.add_term(class, sign * coeff);
        }
        if cur.at_end() {
            break;
        }
        match cur.peek() {
            Some(b'+') | Some(b'-') => sign = cur.parse_sign(),
            _ => return cur.err(cur.pos, "expected '+', '-', or end of expression"),
        }
    }
    Ok(out)
}

fn parse_quiver_atom(
    cur: &mut Cursor<'_>,
    shape: &QuiverShape,
    k: &Field,
    tpos: usize,
) -> Result<QuiverClass, ParseError> {
    match cur.peek() {
        Some(b'S') => {
            cur.pos += 1;
            cur.expect(b'(')?;
            let isign = cur.parse_sign();
            let i = isign * cur.parse_uint()? as i64;
            cur.expect(b',')?;
            let jpos = cur.pos;
            let jsign = cur.parse_sign();
            let j = jsign * cur.parse_uint()? as i64;
            cur.expect(b')')?;
            if j < i {
                return cur.err(jpos, "string end must not precede its start");
            }
            Ok(QuiverClass::Str(StringDesc::new(i, (j - i) as u32, shape)))
        }
        Some(b'B') => {
            cur.pos += 1;
            cur.expect(b'(')?;
            let f = cur.parse_poly(k, &[b','])?;
            cur.expect(b',')?;
            let s = positive_u32(cur)?;
            cur.expect(b')')?;
            let band = BandDesc::new(&f, s, k)
                .map_err(|e| ParseError { pos: tpos, msg: e.to_string() })?;
            Ok(QuiverClass::Band(band))
        }
        Some(b'x') | Some(b'(') | Some(b'J') | Some(b'R') => cur.err(
            tpos,
            "only S(i,j) and B(f,s) terms are valid in quiver expressions",
        ),
        _ => cur.err(tpos, "expected a quiver term"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::rationals()
    }

    #[test]
    fn polynomials_parse_with_rational_coefficients() {
        let k = q();
        let f = parse_poly("x^2 - x + 1", &k).unwrap();
        assert_eq!(f, Polynomial::from_i64(&k, &[1, -1, 1]));
        let g = parse_poly("2*x^3+x-5", &k).unwrap();
        assert_eq!(g, Polynomial::from_i64(&k, &[-5, 1, 0, 2]));
        let h = parse_poly("x - 1/2", &k).unwrap();
        assert_eq!(h.degree(), Some(1));
        let minus_half = BigRational::new(BigInt::from(-1), BigInt::from(2));
        assert_eq!(h.coeff(0, &k), k.from_rational(minus_half));
    }

    #[test]
    fn rational_coefficients_reduce_in_prime_characteristic() {
        let k = Field::prime(5).unwrap();
        // 1/2 = 3 mod 5.
        let f = parse_poly("x - 1/2", &k).unwrap();
        assert_eq!(f.coeff(0, &k), k.from_i64(-3));
        assert!(parse_poly("x - 1/5", &k).is_err());
    }

    #[test]
    fn module_expressions_build_checked_elements() {
        let k = q();
        let e = parse_module_expr("x^3 + 2*(x-1)^2", &k).unwrap();
        let mut expected = RingElement::zero(&k);
        expected.insert_checked(Indecomposable::nil(3), 1, &k).unwrap();
        let xm1 = Polynomial::from_i64(&k, &[-1, 1]);
        expected
            .insert_checked(Indecomposable::band(&xm1, 2, &k).unwrap(), 2, &k)
            .unwrap();
        assert_eq!(e, expected);
    }

    #[test]
    fn band_validation_happens_at_parse_time() {
        let k = q();
        let err = parse_module_expr("(x^2-1)^1", &k).unwrap_err();
        assert!(err.msg.contains("irreducible"), "{}", err.msg);
        let err = parse_module_expr("(x^2-x)^1", &k).unwrap_err();
        assert!(err.msg.contains("constant term"), "{}", err.msg);
        assert!(parse_module_expr("J(1,2)", &k).is_err());
        assert!(parse_module_expr("(x-1)^0", &k).is_err());
    }

    #[test]
    fn real_closed_terms_parse_gaussian_parameters() {
        let k = Field::real_closed();
        let e = parse_module_expr("J(-1/2,2) + 3*R(1+2i,1) + R(i,4)", &k).unwrap();
        assert_eq!(e.terms().len(), 3);
        assert_eq!(e.dim(), 2 + 3 * 2 + 8);
        assert!(parse_module_expr("R(2,1)", &k).is_err());
        assert!(parse_module_expr("J(0,1)", &k).is_err());
    }

    #[test]
    fn zero_literal_and_signs_are_understood() {
        let k = q();
        assert!(parse_module_expr("0", &k).unwrap().is_zero());
        let e = parse_module_expr("-x + 2*x - 0", &k).unwrap();
        let mut expected = RingElement::zero(&k);
        expected.insert_checked(Indecomposable::nil(1), 1, &k).unwrap();
        assert_eq!(e, expected);
        assert!(parse_module_expr("3", &k).is_err());
        assert!(parse_module_expr("x ++ x", &k).is_err());
        assert!(parse_module_expr("", &k).is_err());
    }

    #[test]
    fn quiver_expressions_parse_strings_and_bands() {
        let k = q();
        let shape = QuiverShape::cyclic(2);
        let e = parse_quiver_expr("S(1,1) + 2*S(0,4) + B(x^2+1,1)", &shape, &k).unwrap();
        assert_eq!(e.terms().len(), 3);
        assert_eq!(e.dim_vector().iter().sum::<i64>(), 1 + 2 * 5 + 3 * 2);
        assert!(parse_quiver_expr("S(2,1)", &shape, &k).is_err());
        assert!(parse_quiver_expr("x^2", &shape, &k).is_err());
        let err = parse_quiver_expr("B(x^2-1,1)", &shape, &k).unwrap_err();
        assert!(err.msg.contains("irreducible"), "{}", err.msg);
    }

    #[test]
    fn errors_carry_positions() {
        let k = q();
        let err = parse_module_expr("x^2 + (x^2-1)^1", &k).unwrap_err();
        assert_eq!(err.pos, 6);
        let caret = error_with_caret("x^2 + (x^2-1)^1", &err);
        assert!(caret.lines().last().unwrap().trim_end().ends_with('^'));
    }
}
