//! Residue-class certificates: a single verified quadruple (s, w, m, y)
//! certifies every denominator in an arithmetic progression at once, each
//! member getting an explicit five-syllable witness (rescaled when the
//! class carries a common factor).

use crate::arith::{gcd, int, Int};
use crate::certify::{certify, Certification, Outcome};
use crate::orbit::{integer_witness, is_step_witness, Step, Word};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

/// Errors from certificate construction and member witnessing.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ResidueError {
    #[error("certificate ({s}, {w}, {m}, {y}) fails the goodness conditions")]
    NotGood { s: Int, w: Int, m: Int, y: Int },
    #[error("w = {w} must be coprime to the modulus {modulus}")]
    NotCoprime { w: Int, modulus: Int },
    #[error("shift y = {y} must divide m = {m} and be nonzero")]
    IndivisibleShift { y: Int, m: Int },
    #[error("s·m·y = {smy} is congruent to neither ±1 modulo w = {w}")]
    NotCongruent { smy: Int, w: Int },
    #[error("member r = {r} is excluded from this class's witnesses")]
    ExcludedMember { r: Int },
    #[error("denominator shift w = {w} is outside ±{{1, 2, 3, 4, 6}}")]
    UnsupportedShift { w: Int },
    #[error("parameter must be nonzero")]
    ZeroParameter,
    #[error("constructed word failed verification at q = {s}/{r}")]
    VerificationFailed { s: Int, r: Int },
}

/// The arithmetic progression {w + modulus·t} (modulus positive).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResidueClass {
    #[serde(with = "crate::arith::serde_int")]
    pub w: Int,
    #[serde(with = "crate::arith::serde_int")]
    pub modulus: Int,
}

impl ResidueClass {
    pub fn new(w: Int, modulus: Int) -> ResidueClass {
        assert!(modulus.is_positive(), "class modulus must be positive");
        ResidueClass { w, modulus }
    }

    pub fn contains(&self, v: &Int) -> bool {
        (v - &self.w).is_multiple_of(&self.modulus)
    }
}

impl fmt::Display for ResidueClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}; {})", self.w, self.modulus)
    }
}

/// A certified-good quadruple: every denominator w + s·m·t (three values
/// excepted) makes s/(w + s·m·t) a relation number.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoodCertificate {
    #[serde(with = "crate::arith::serde_int")]
    pub s: Int,
    #[serde(with = "crate::arith::serde_int")]
    pub w: Int,
    #[serde(with = "crate::arith::serde_int")]
    pub m: Int,
    #[serde(with = "crate::arith::serde_int")]
    pub y: Int,
}

impl GoodCertificate {
    /// D = gcd(w, s·m): the common factor the whole class carries.
    pub fn class_gcd(&self) -> Int {
        gcd(&self.w, &(&self.s * &self.m))
    }

    /// d = gcd(w, s).
    pub fn numerator_gcd(&self) -> Int {
        gcd(&self.w, &self.s)
    }

    /// The progression this certificate covers.
    pub fn class(&self) -> ResidueClass {
        ResidueClass::new(self.w.clone(), (&self.s * &self.m).abs())
    }

    pub fn is_good(&self) -> bool {
        is_good_with(&self.s, &self.w, &self.m, &self.y)
    }
}

impl fmt::Display for GoodCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {}, {})", self.s, self.w, self.m, self.y)
    }
}

/// The goodness conditions: y·D divides m·d, and s·m·y is congruent to D
/// or −D modulo w, where D = gcd(w, sm) and d = gcd(w, s).
pub fn is_good_with(s: &Int, w: &Int, m: &Int, y: &Int) -> bool {
    if s.is_zero() || w.is_zero() || m.is_zero() || y.is_zero() {
        return false;
    }
    let dd = gcd(w, &(s * m));
    let d = gcd(w, s);
    let smy = s * m * y;
    (&(m * &d)).is_multiple_of(&(y * &dd))
        && ((&smy - &dd).is_multiple_of(w) || (smy + dd).is_multiple_of(w))
}

/// Positive divisors of |n|, ascending.
fn divisors(n: &Int) -> Vec<Int> {
    let n = n.abs();
    assert!(!n.is_zero(), "divisors of zero are unbounded");
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut i = Int::one();
    while &i * &i <= n {
        if n.is_multiple_of(&i) {
            small.push(i.clone());
            let j = &n / &i;
            if j != i {
                large.push(j);
            }
        }
        i += 1;
    }
    large.reverse();
    small.extend(large);
    small
}

/// Search for a shift y making (s, w, m) a good certificate: candidates
/// are the divisors of m·d/D by smallest absolute value, positive first.
pub fn search_certificate(s: &Int, w: &Int, m: &Int) -> Option<GoodCertificate> {
    if s.is_zero() || w.is_zero() || m.is_zero() {
        return None;
    }
    let dd = gcd(w, &(s * m));
    let d = gcd(w, s);
    let bound = m * d / dd;
    for y in divisors(&bound) {
        for y in [y.clone(), -y] {
            if is_good_with(s, w, m, &y) {
                return Some(GoodCertificate { s: s.clone(), w: w.clone(), m: m.clone(), y });
            }
        }
    }
    None
}

/// The quick sufficient test: y divides m and s·m·y ≡ ±d (mod w) with
/// d = gcd(w, s). This forces D = d, so the full conditions follow.
pub fn small_gcd_check(s: &Int, w: &Int, m: &Int, y: &Int) -> bool {
    if s.is_zero() || w.is_zero() || m.is_zero() || y.is_zero() {
        return false;
    }
    let d = gcd(w, s);
    let smy = s * m * y;
    m.is_multiple_of(y) && ((&smy - &d).is_multiple_of(w) || (smy + d).is_multiple_of(w))
}

/// Package a quadruple passing [`small_gcd_check`] as a certificate.
pub fn small_gcd_certificate(s: &Int, w: &Int, m: &Int, y: &Int) -> Result<GoodCertificate, ResidueError> {
    if !small_gcd_check(s, w, m, y) {
        return Err(ResidueError::NotGood { s: s.clone(), w: w.clone(), m: m.clone(), y: y.clone() });
    }
    let cert = GoodCertificate { s: s.clone(), w: w.clone(), m: m.clone(), y: y.clone() };
    debug_assert!(cert.is_good());
    Ok(cert)
}

/// The unconditional certificate (s, w, 1, 1), good for every s > 1 when
/// w is one of ±1, ±2, ±3, ±4, ±6.
pub fn small_denominator_good(s: &Int, w: &Int) -> Result<GoodCertificate, ResidueError> {
    let allowed = matches!(w.abs().to_string().as_str(), "1" | "2" | "3" | "4" | "6");
    if !allowed {
        return Err(ResidueError::UnsupportedShift { w: w.clone() });
    }
    if *s <= Int::one() {
        return Err(ResidueError::NotGood { s: s.clone(), w: w.clone(), m: Int::one(), y: Int::one() });
    }
    let cert = GoodCertificate { s: s.clone(), w: w.clone(), m: Int::one(), y: Int::one() };
    debug_assert!(cert.is_good(), "({s}, {w}, 1, 1) must be good");
    Ok(cert)
}

/// Scale a good certificate by n ≠ 0: (s, n·w, n·m, y) is again good and
/// covers the scaled progression n·(w; sm).
pub fn scale_certificate(cert: &GoodCertificate, n: &Int) -> Result<GoodCertificate, ResidueError> {
    if n.is_zero() {
        return Err(ResidueError::ZeroParameter);
    }
    let scaled = GoodCertificate {
        s: cert.s.clone(),
        w: n * &cert.w,
        m: n * &cert.m,
        y: cert.y.clone(),
    };
    debug_assert!(!cert.is_good() || scaled.is_good());
    Ok(scaled)
}

/// Negate a good certificate: (s, −w, −m, y) covers the negated members.
pub fn negate_certificate(cert: &GoodCertificate) -> GoodCertificate {
    let negated = GoodCertificate {
        s: cert.s.clone(),
        w: -&cert.w,
        m: -&cert.m,
        y: cert.y.clone(),
    };
    debug_assert!(!cert.is_good() || negated.is_good());
    negated
}

/// The two-a-syllable witness for r = w + s·m·t in a coprime class
/// (gcd(w, sm) = 1, y | m): b^{r·ŷ} a^{−v/ŷ} b^{−t} a^{m} b^{−r(ŷ−ut)},
/// where ŷ = ±y is the sign with w | s·m·ŷ − 1, u = (1 − s·m·ŷ)/w, and
/// v = m(ŷ − ut). Verified against q = s/r before returning.
pub fn two_step_witness(s: &Int, w: &Int, m: &Int, y: &Int, t: &Int) -> Result<Word, ResidueError> {
    let sm = s * m;
    if !gcd(w, &sm).is_one() {
        return Err(ResidueError::NotCoprime { w: w.clone(), modulus: sm });
    }
    if y.is_zero() || !m.is_multiple_of(y) {
        return Err(ResidueError::IndivisibleShift { y: y.clone(), m: m.clone() });
    }
    let smy = &sm * y;
    let yy = if (&smy - Int::one()).is_multiple_of(w) && !smy.is_one() {
        y.clone()
    } else if (&smy + Int::one()).is_multiple_of(w) && smy != int(-1) {
        -y
    } else {
        return Err(ResidueError::NotCongruent { smy, w: w.clone() });
    };
    let r = w + &sm * t;
    if r.is_zero() || r.abs().is_one() || &r == w {
        return Err(ResidueError::ExcludedMember { r });
    }
    let u = (Int::one() - &sm * &yy) / w;
    let tail = &yy - &u * t;
    let word = Word::from_steps([
        Step::b(&r * &yy),
        Step::a(-(&(m / &yy) * &tail)),
        Step::b(-t),
        Step::a(m.clone()),
        Step::b(-(&r * tail)),
    ]);
    if !is_step_witness(s, &r, &word).unwrap_or(false) {
        return Err(ResidueError::VerificationFailed { s: s.clone(), r });
    }
    Ok(word)
}

/// A verified witness for the member r = w + s·m·t of a good class: reduce
/// out the class gcd, build the coprime-class witness, and rescale its
/// b-exponents. Classes that are entirely multiples of s close directly
/// with b^{2N} a^{−1} b^{2N} for N = r/s.
pub fn member_witness(cert: &GoodCertificate, t: &Int) -> Result<Word, ResidueError> {
    if !cert.is_good() {
        return Err(ResidueError::NotGood {
            s: cert.s.clone(),
            w: cert.w.clone(),
            m: cert.m.clone(),
            y: cert.y.clone(),
        });
    }
    let GoodCertificate { s, w, m, y } = cert;
    let sm = s * m;
    let r = w + &sm * t;
    let dd = cert.class_gcd();
    let d = cert.numerator_gcd();
    if r.is_zero() || &r == w || r.abs() == dd {
        return Err(ResidueError::ExcludedMember { r });
    }
    let word = if dd == sm.abs() {
        let n = &r / s;
        integer_witness(&Int::one()).unwrap().scale_b(&n)
    } else {
        let inner = two_step_witness(&(s / &d), &(w / &dd), &(m * &d / &dd), y, t)?;
        inner.scale_b(&(&dd / &d))
    };
    if !is_step_witness(s, &r, &word).unwrap_or(false) {
        return Err(ResidueError::VerificationFailed { s: s.clone(), r });
    }
    Ok(word)
}

/// The progression a good certificate covers, and the class members its
/// witnesses except: 0, w itself, and ±D, kept only when actually in the
/// class, sorted ascending.
pub fn good_class_members(cert: &GoodCertificate) -> (ResidueClass, Vec<Int>) {
    let sm = &cert.s * &cert.m;
    let dd = cert.class_gcd();
    let class = cert.class();
    let mut exceptions: Vec<Int> = [Int::zero(), cert.w.clone(), dd.clone(), -dd]
        .into_iter()
        .filter(|v| (v - &cert.w).is_multiple_of(&sm))
        .collect();
    exceptions.sort();
    exceptions.dedup();
    (class, exceptions)
}

/// The smallest modulus M (a multiple of the per-residue base moduli) such
/// that every class w + s·M·ℤ, w ∈ Q, stays clear of the closed cases: no
/// nonzero step lands on 0, on a divisor of s, or within s/4 of zero.
pub fn progression_modulus(s: &Int, residues: &[Int]) -> Int {
    assert!(s.is_positive(), "progression modulus needs s ≥ 1");
    let mut base = Int::one();
    for w in residues {
        assert!(!w.is_zero(), "residues must be nonzero");
        let d = gcd(w, s);
        let mut m = Int::one();
        while !(&(s * &m) - &d).is_multiple_of(w) {
            m += 1;
        }
        base = base.lcm(&m);
    }
    let closed = |v: &Int| -> bool {
        v.is_zero() || s.is_multiple_of(v) || int(4) * v.abs() <= *s
    };
    let mut modulus = base.clone();
    'outer: loop {
        for w in residues {
            let step = s * &modulus;
            let mut j = Int::one();
            loop {
                let up = w + &step * &j;
                let down = w - &step * &j;
                if up.abs() > *s && down.abs() > *s {
                    break;
                }
                if (up.abs() <= *s && closed(&up)) || (down.abs() <= *s && closed(&down)) {
                    modulus += &base;
                    continue 'outer;
                }
                j += 1;
            }
        }
        return modulus;
    }
}

/// One family's outcome at a particular n.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyFinding {
    pub label: String,
    #[serde(with = "crate::arith::serde_int")]
    pub s: Int,
    #[serde(with = "crate::arith::serde_int")]
    pub r: Int,
    #[serde(with = "crate::arith::serde_opt_int")]
    pub integer: Option<Int>,
    #[serde(with = "crate::orbit::serde_word_text")]
    pub witness: Option<Word>,
    pub verified: bool,
}

fn finding_with_word(label: &str, s: Int, r: Int, integer: Option<Int>, witness: Word) -> FamilyFinding {
    let verified = is_step_witness(&s, &r, &witness).unwrap_or(false);
    FamilyFinding { label: label.to_string(), s, r, integer, witness: Some(witness), verified }
}

fn finding_from_certification(label: &str, s: Int, r: Int, c: Certification) -> FamilyFinding {
    let verified = c.outcome == Outcome::RelationNumber && c.verified;
    FamilyFinding { label: label.to_string(), s, r, integer: None, witness: c.witness, verified }
}

/// Evaluate the standard parameter families 3/n, 1 − w/n for w ∈
/// {2, 3, 4, 6}, and 2 − 1/n at the integer n, producing a verified
/// witness (or the integer value the family collapses to) for each.
pub fn basic_families_check(n: &Int) -> Result<Vec<FamilyFinding>, ResidueError> {
    if n.is_zero() {
        return Err(ResidueError::ZeroParameter);
    }
    let mut findings = Vec::new();

    // 3/n: rescale the integer-3 witness.
    let three = int(3);
    let witness = integer_witness(&three).unwrap().scale_b(n);
    let integer = three.is_multiple_of(n).then(|| &three / n);
    findings.push(finding_with_word("3/n", three, n.clone(), integer, witness));

    // 1 − w/n: nearly-1 parameters from small-shift classes.
    for w in [2i64, 3, 4, 6].map(int) {
        let label = format!("1-{w}/n");
        let s = n - &w;
        if w.is_multiple_of(n) {
            let value = &s / n;
            match integer_witness(&value) {
                Some(witness) => {
                    findings.push(finding_with_word(&label, s, n.clone(), Some(value), witness))
                }
                None => findings.push(FamilyFinding {
                    label,
                    s,
                    r: n.clone(),
                    integer: Some(value),
                    witness: None,
                    verified: false,
                }),
            }
        } else if n.abs() <= int(6) {
            let g = gcd(n, &w);
            let c = certify(&(&s / &g), &(n / &g), 5000);
            findings.push(finding_from_certification(&label, s, n.clone(), c));
        } else if s.is_one() {
            // n = w + 1: the parameter is 1/n.
            let witness = integer_witness(&Int::one()).unwrap().scale_b(n);
            findings.push(finding_with_word(&label, s, n.clone(), None, witness));
        } else {
            let (cert_s, cert_w) = if n.is_positive() { (s.clone(), w.clone()) } else { (-n + &w, -&w) };
            let witness = member_witness(&small_denominator_good(&cert_s, &cert_w)?, &Int::one())?;
            findings.push(finding_with_word(&label, s, n.clone(), None, witness));
        }
    }

    // 2 − 1/n: a one-shot coprime-class witness; integers at n = ±1.
    let s = int(2) * n - 1;
    if n.abs().is_one() {
        let value = &s / n;
        let witness = integer_witness(&value).unwrap();
        findings.push(finding_with_word("2-1/n", s, n.clone(), Some(value), witness));
    } else {
        let witness = two_step_witness(&s, &(Int::one() - n), &Int::one(), &Int::one(), &Int::one())?;
        findings.push(finding_with_word("2-1/n", s, n.clone(), None, witness));
    }
    Ok(findings)
}
