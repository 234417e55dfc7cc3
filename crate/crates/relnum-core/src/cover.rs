//! Residue-class covers: for a fixed numerator s, a finite set of good
//! certificates whose classes blanket every denominator coprime to s,
//! certifying all but finitely many parameters s/r at once. The leftover
//! exception values are dispatched individually.

use crate::arith::{gcd, int, Int};
use crate::certify::{certify, Certification, Outcome};
use crate::orbit::{integer_witness, is_step_witness, Word};
use crate::residue::{good_class_members, is_good_with, member_witness, GoodCertificate};
use dashmap::DashMap;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::sync::{Arc, LazyLock};

/// How an exception value v (a denominator the class certificate skips)
/// gets classified.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Disposition {
    /// |s/v| ≥ 4: outside the open regime, never a relation number.
    SmallRange,
    /// s/v is an integer; witnessed exactly when it lies in [−3, 3].
    IntegerParameter,
    /// Certified individually by the iterative algorithms.
    Certified,
}

/// One exception value and how it was dispatched.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExceptionRecord {
    #[serde(with = "crate::arith::serde_int")]
    pub value: Int,
    pub disposition: Disposition,
    #[serde(with = "crate::orbit::serde_word_text")]
    pub witness: Option<Word>,
}

/// One covered residue: w (mod s·multiplier) is reached by the class of
/// the certificate (s, w_prime, m, y), directly when w ≡ w_prime (mod sm)
/// and through negation when w ≡ −w_prime (mod sm).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverEntry {
    #[serde(with = "crate::arith::serde_int")]
    pub w: Int,
    #[serde(with = "crate::arith::serde_int")]
    pub w_prime: Int,
    #[serde(with = "crate::arith::serde_int")]
    pub m: Int,
    #[serde(with = "crate::arith::serde_int")]
    pub y: Int,
    pub exceptions: Vec<ExceptionRecord>,
}

impl CoverEntry {
    pub fn certificate(&self, s: &Int) -> GoodCertificate {
        GoodCertificate { s: s.clone(), w: self.w_prime.clone(), m: self.m.clone(), y: self.y.clone() }
    }
}

/// A full cover for one numerator: entries for every residue coprime to s
/// modulo s·multiplier (when complete).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverReport {
    #[serde(with = "crate::arith::serde_int")]
    pub s: Int,
    #[serde(with = "crate::arith::serde_int")]
    pub multiplier: Int,
    pub entries: Vec<CoverEntry>,
    pub complete: bool,
}

impl CoverReport {
    pub fn modulus(&self) -> Int {
        &self.s * &self.multiplier
    }

    pub fn entry_for(&self, w: &Int) -> Option<&CoverEntry> {
        self.entries.iter().find(|e| &e.w == w)
    }
}

/// The class-modulus multiplier used to cover each numerator 12 ≤ s ≤ 27.
/// Numerators below 12 get single-modulus covers; none is needed above 27.
pub fn cover_multiplier(s: &Int) -> Option<Int> {
    const TABLE: [i64; 16] = [2, 2, 2, 2, 2, 3, 6, 2, 4, 6, 12, 12, 1680, 6, 60, 60];
    use num_traits::ToPrimitive;
    let s = s.to_i64()?;
    if (12..=27).contains(&s) {
        Some(int(TABLE[(s - 12) as usize]))
    } else {
        None
    }
}

/// Shared memo for individually-certified parameters.
static CERTIFY_MEMO: LazyLock<DashMap<(Int, Int), Certification>> = LazyLock::new(DashMap::new);

fn memo_certify(s: &Int, r: &Int) -> Certification {
    let key = (s.clone(), r.clone());
    if let Some(hit) = CERTIFY_MEMO.get(&key) {
        return hit.clone();
    }
    let c = certify(s, r, 5000);
    CERTIFY_MEMO.insert(key, c.clone());
    c
}

/// Classify one exception value v: out of range, an integer parameter, or
/// individually certified.
fn dispatch_exception(s: &Int, v: &Int) -> ExceptionRecord {
    if int(4) * v.abs() <= *s {
        return ExceptionRecord { value: v.clone(), disposition: Disposition::SmallRange, witness: None };
    }
    let g = gcd(s, v);
    let (s0, v0) = (s / &g, v / &g);
    if v0.abs().is_one() {
        let n = &s0 * &v0;
        let witness = integer_witness(&n)
            .filter(|w| is_step_witness(s, v, w).unwrap_or(false));
        return ExceptionRecord { value: v.clone(), disposition: Disposition::IntegerParameter, witness };
    }
    let c = memo_certify(&s0, &v0);
    let witness = match (c.outcome, c.verified) {
        (Outcome::RelationNumber, true) => c.witness,
        _ => None,
    };
    ExceptionRecord { value: v.clone(), disposition: Disposition::Certified, witness }
}

fn entry_from_certificate(s: &Int, w: &Int, cert: &GoodCertificate) -> CoverEntry {
    let (_, exception_values) = good_class_members(cert);
    let exceptions = exception_values.iter().map(|v| dispatch_exception(s, v)).collect();
    CoverEntry {
        w: w.clone(),
        w_prime: cert.w.clone(),
        m: cert.m.clone(),
        y: cert.y.clone(),
        exceptions,
    }
}

/// Search one residue for the first covering certificate in the frozen
/// candidate order: |w′| ascending (positive sign first), then class
/// factors m dividing the multiplier ascending, then the congruence
/// orientation, then shifts y among divisors of m by |y| (positive first).
fn search_entry(s: &Int, multiplier: &Int, w: &Int) -> Option<CoverEntry> {
    let m_candidates: Vec<Int> = positive_divisors(multiplier);
    let mut k = Int::one();
    while k <= *w {
        for w_prime in [k.clone(), -&k] {
            for m in &m_candidates {
                let sm = s * m;
                let congruent =
                    (w - &w_prime).is_multiple_of(&sm) || (w + &w_prime).is_multiple_of(&sm);
                if !congruent {
                    continue;
                }
                for y_abs in positive_divisors(m) {
                    for y in [y_abs.clone(), -y_abs] {
                        if is_good_with(s, &w_prime, m, &y) {
                            let cert = GoodCertificate {
                                s: s.clone(),
                                w: w_prime.clone(),
                                m: m.clone(),
                                y,
                            };
                            return Some(entry_from_certificate(s, w, &cert));
                        }
                    }
                }
            }
        }
        k += 1;
    }
    None
}

fn positive_divisors(n: &Int) -> Vec<Int> {
    let n = n.abs();
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

/// Build the cover for 12 ≤ s ≤ 27 by searching every residue coprime to
/// s modulo s·multiplier.
pub fn cover_search(s: &Int) -> CoverReport {
    let multiplier = cover_multiplier(s).expect("cover multipliers exist for 12 ≤ s ≤ 27");
    let modulus = s * &multiplier;
    let mut entries = Vec::new();
    let mut complete = true;
    let mut w = Int::one();
    while w < modulus {
        if gcd(&w, s).is_one() {
            match search_entry(s, &multiplier, &w) {
                Some(e) => entries.push(e),
                None => complete = false,
            }
        }
        w += 1;
    }
    CoverReport { s: s.clone(), multiplier, entries, complete }
}

/// The single-modulus covers for s ≤ 11 (and also 14 and 15): each
/// residue w is met by the smallest k dividing s − 1 or s + 1 with
/// k ≡ ±w (mod s), giving the certificate (s, ±k, 1, 1).
pub fn cover_small_s(s: &Int) -> CoverReport {
    assert!(s.is_positive(), "small covers need s ≥ 1");
    let mut entries = Vec::new();
    let mut complete = true;
    let mut w = Int::one();
    while w < *s {
        if gcd(&w, s).is_one() {
            let mut found = None;
            let mut k = Int::one();
            while k <= s + Int::one() {
                let divides = (s - Int::one()).is_multiple_of(&k) || (s + Int::one()).is_multiple_of(&k);
                if divides {
                    let w_prime = if (&k - &w).is_multiple_of(s) {
                        Some(k.clone())
                    } else if (&k + &w).is_multiple_of(s) {
                        Some(-&k)
                    } else {
                        None
                    };
                    if let Some(w_prime) = w_prime {
                        let cert = GoodCertificate {
                            s: s.clone(),
                            w: w_prime,
                            m: Int::one(),
                            y: Int::one(),
                        };
                        debug_assert!(cert.is_good());
                        found = Some(entry_from_certificate(s, &w, &cert));
                        break;
                    }
                }
                k += 1;
            }
            match found {
                Some(e) => entries.push(e),
                None => complete = false,
            }
        }
        w += 1;
    }
    CoverReport { s: s.clone(), multiplier: Int::one(), entries, complete }
}

/// Memoized covers keyed by numerator.
static COVER_MEMO: LazyLock<DashMap<Int, Arc<CoverReport>>> = LazyLock::new(DashMap::new);

fn cover_arc(s: &Int) -> Option<Arc<CoverReport>> {
    if let Some(hit) = COVER_MEMO.get(s) {
        return Some(hit.clone());
    }
    let report = if s >= &int(1) && s <= &int(11) {
        cover_small_s(s)
    } else if s >= &int(12) && s <= &int(27) && s != &int(24) {
        cover_search(s)
    } else {
        return None;
    };
    let arc = Arc::new(report);
    COVER_MEMO.insert(s.clone(), arc.clone());
    Some(arc)
}

/// The canonical cover for 1 ≤ s ≤ 27, s ≠ 24: single-modulus for
/// s ≤ 11, searched for 12 ≤ s ≤ 27.
pub fn cover_for(s: &Int) -> Option<CoverReport> {
    cover_arc(s).map(|a| (*a).clone())
}

/// Re-validate a cover report without searching: residue accounting,
/// goodness, congruences, and every exception record.
pub fn verify_cover_report(report: &CoverReport) -> bool {
    if !report.s.is_positive() || !report.multiplier.is_positive() {
        return false;
    }
    let modulus = report.modulus();
    let mut expected = Vec::new();
    let mut w = Int::one();
    while w < modulus {
        if gcd(&w, &report.s).is_one() {
            expected.push(w.clone());
        }
        w += 1;
    }
    let covered: Vec<Int> = report.entries.iter().map(|e| e.w.clone()).collect();
    if report.complete {
        if covered != expected {
            return false;
        }
    } else {
        let mut seen = std::collections::HashSet::new();
        for w in &covered {
            if !expected.contains(w) || !seen.insert(w.clone()) {
                return false;
            }
        }
    }
    for entry in &report.entries {
        if !report.multiplier.is_multiple_of(&entry.m) {
            return false;
        }
        let cert = entry.certificate(&report.s);
        if !cert.is_good() {
            return false;
        }
        let sm = &report.s * &entry.m;
        if !(&entry.w - &entry.w_prime).is_multiple_of(&sm)
            && !(&entry.w + &entry.w_prime).is_multiple_of(&sm)
        {
            return false;
        }
        let (_, expected_exceptions) = good_class_members(&cert);
        let values: Vec<Int> = entry.exceptions.iter().map(|e| e.value.clone()).collect();
        if values != expected_exceptions {
            return false;
        }
        for record in &entry.exceptions {
            if !verify_exception(&report.s, record) {
                return false;
            }
        }
    }
    true
}

fn verify_exception(s: &Int, record: &ExceptionRecord) -> bool {
    let v = &record.value;
    let out_of_range = int(4) * v.abs() <= *s;
    match record.disposition {
        Disposition::SmallRange => out_of_range && record.witness.is_none(),
        Disposition::IntegerParameter => {
            if out_of_range || !s.is_multiple_of(v) {
                return false;
            }
            let n = s / v;
            match &record.witness {
                Some(w) => is_step_witness(s, v, w).unwrap_or(false),
                None => n.abs() > int(3),
            }
        }
        Disposition::Certified => {
            if out_of_range {
                return false;
            }
            match &record.witness {
                Some(w) => is_step_witness(s, v, w).unwrap_or(false),
                None => false,
            }
        }
    }
}

/// How a small-numerator verdict was reached.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Route {
    /// The parameter is an integer (s = 0, or |r| = 1).
    Integer,
    /// s = 1: the parameter is the reciprocal 1/r.
    Reciprocal,
    /// |s| ≥ 4|r|: outside the open regime (or r = 0).
    OutsideRange,
    /// gcd(s, r) > 1: not in lowest terms.
    NotReduced,
    /// Witnessed by a cover entry's class certificate.
    CoverMember,
    /// A cover exception, certified individually.
    CoverException,
    /// No cover is built for this numerator.
    Unsupported,
}

/// The verdict for one parameter s/r routed through the covers.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    #[serde(with = "crate::arith::serde_int")]
    pub s: Int,
    #[serde(with = "crate::arith::serde_int")]
    pub r: Int,
    pub outcome: Outcome,
    #[serde(with = "crate::orbit::serde_word_text")]
    pub witness: Option<Word>,
    pub verified: bool,
    pub via: Route,
}

impl Verdict {
    fn new(s: &Int, r: &Int, outcome: Outcome, witness: Option<Word>, via: Route) -> Verdict {
        let verified = match &witness {
            Some(w) => is_step_witness(s, r, w).unwrap_or(false),
            None => false,
        };
        Verdict { s: s.clone(), r: r.clone(), outcome, witness, verified, via }
    }
}

/// Decide s/r for any |s| ≤ 27 except 24: integers and reciprocals close
/// directly, the open regime routes through the cover for |s|, and the
/// few class exceptions fall back to the iterative algorithms.
pub fn certify_small_numerator(s: &Int, r: &Int) -> Verdict {
    if s.is_negative() {
        let inner = certify_small_numerator(&-s, &-r);
        return Verdict { s: s.clone(), r: r.clone(), ..inner };
    }
    if r.is_zero() {
        return Verdict::new(s, r, Outcome::KnownCase, None, Route::OutsideRange);
    }
    if s.is_zero() {
        let w = integer_witness(&Int::zero());
        return Verdict::new(s, r, Outcome::RelationNumber, w, Route::Integer);
    }
    if s.is_one() {
        let w = integer_witness(&Int::one()).unwrap().scale_b(r);
        return Verdict::new(s, r, Outcome::RelationNumber, Some(w), Route::Reciprocal);
    }
    if !gcd(s, r).is_one() {
        return Verdict::new(s, r, Outcome::KnownCase, None, Route::NotReduced);
    }
    if int(4) * r.abs() <= *s {
        return Verdict::new(s, r, Outcome::KnownCase, None, Route::OutsideRange);
    }
    if r.abs().is_one() {
        // Only s = 2 or 3 reach here; larger integers are out of range.
        let w = integer_witness(&(s * r));
        return Verdict::new(s, r, Outcome::RelationNumber, w, Route::Integer);
    }
    let Some(cover) = cover_arc(s) else {
        return Verdict::new(s, r, Outcome::Inconclusive, None, Route::Unsupported);
    };
    let w = r.mod_floor(&cover.modulus());
    let Some(entry) = cover.entry_for(&w) else {
        return Verdict::new(s, r, Outcome::Inconclusive, None, Route::Unsupported);
    };
    let cert = entry.certificate(s);
    let sm = s * &entry.m;
    let direct = (r - &entry.w_prime).is_multiple_of(&sm);
    let t = if direct { (r - &entry.w_prime) / &sm } else { (-r - &entry.w_prime) / &sm };
    match member_witness(&cert, &t) {
        Ok(word) => {
            let word = if direct { word } else { word.negate_b() };
            Verdict::new(s, r, Outcome::RelationNumber, Some(word), Route::CoverMember)
        }
        Err(_) => {
            let c = memo_certify(s, r);
            let mut v = Verdict::new(s, r, c.outcome, c.witness, Route::CoverException);
            v.outcome = c.outcome;
            v
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multiplier_table() {
        let expect = [2i64, 2, 2, 2, 2, 3, 6, 2, 4, 6, 12, 12, 1680, 6, 60, 60];
        for (s, t) in (12..=27).zip(expect) {
            assert_eq!(cover_multiplier(&int(s)), Some(int(t)), "s = {s}");
        }
        assert_eq!(cover_multiplier(&int(11)), None);
        assert_eq!(cover_multiplier(&int(28)), None);
    }

    #[test]
    fn small_covers_complete_and_sound() {
        for s in (1..=11).chain([14, 15]) {
            let report = cover_small_s(&int(s));
            assert!(report.complete, "s = {s}");
            assert_eq!(report.multiplier, int(1));
            assert!(verify_cover_report(&report), "s = {s}");
        }
    }

    #[test]
    fn small_cover_shifts_divide_neighbors() {
        let report = cover_small_s(&int(5));
        let shifts: Vec<(Int, Int)> =
            report.entries.iter().map(|e| (e.w.clone(), e.w_prime.clone())).collect();
        let expect: Vec<(Int, Int)> =
            [(1i64, 1i64), (2, 2), (3, -2), (4, -1)].map(|(a, b)| (int(a), int(b))).to_vec();
        assert_eq!(shifts, expect);
}

    #[test]
    fn searched_cover_matches_known_families_s12() {
        let report = cover_search(&int(12));
        assert!(report.complete);
        assert!(verify_cover_report(&report));
        for (w, w_prime, m, y) in [(5i64, 5i64, 2i64, 1i64), (19, 5, 2, 1), (7, 7, 2, 2), (17, 7, 2, 2)] {
            let e = report.entry_for(&int(w)).unwrap();
            assert_eq!((&e.w_prime, &e.m, &e.y), (&int(w_prime), &int(m), &int(y)), "w = {w}");
        }
        // w = 19 and 17 take the negated orientation.
        for w in [19i64, 17] {
            let e = report.entry_for(&int(w)).unwrap();
            let sm = int(12) * &e.m;
            assert!(!(&e.w - &e.w_prime).is_multiple_of(&sm));
            assert!((&e.w + &e.w_prime).is_multiple_of(&sm));
        }
    }

    #[test]
    fn searched_cover_matches_known_families_s21() {
        let report = cover_search(&int(21));
        assert!(report.complete);
        assert!(verify_cover_report(&report));
        let cases = [
            // (w, w_prime, m, direct orientation)
            (8i64, 8i64, 2i64, true),
            (71, 8, 3, true),
            (13, 13, 6, true),
            (29, 29, 6, true),
            (34, 8, 2, false),
            (55, 8, 3, false),
            (97, 29, 6, false),
            (113, 13, 6, false),
        ];
        for (w, w_prime, m, direct) in cases {
            let e = report.entry_for(&int(w)).unwrap();
            assert_eq!((&e.w_prime, &e.m), (&int(w_prime), &int(m)), "w = {w}");
            let sm = int(21) * &e.m;
            assert_eq!((&e.w - &e.w_prime).is_multiple_of(&sm), direct, "w = {w}");
        }
    }

    #[test]
    fn all_searched_covers_complete() {
        // The full check over 12..=27 runs in the acceptance suite; spot
        // the two cheapest here.
        for s in [13i64, 19] {
            let report = cover_search(&int(s));
            assert!(report.complete, "s = {s}");
            assert!(verify_cover_report(&report), "s = {s}");
        }
    }

    #[test]
    fn exception_dispatch_kinds() {
        // s = 5, shift 1: the class (1; 5) excepts 1, where 5/1 is out of
        // range; shift 2 excepts 2, certified individually.
        let report = cover_small_s(&int(5));
        let e1 = report.entry_for(&int(1)).unwrap();
        assert_eq!(e1.exceptions.len(), 1);
        assert_eq!(e1.exceptions[0].disposition, Disposition::SmallRange);
        assert!(e1.exceptions[0].witness.is_none());
        let e2 = report.entry_for(&int(2)).unwrap();
        assert_eq!(e2.exceptions[0].disposition, Disposition::Certified);
        assert!(e2.exceptions[0].witness.is_some());

        // s = 2: the class (1; 2) excepts ±1, integer parameters ±2.
        let report = cover_small_s(&int(2));
        let e = report.entry_for(&int(1)).unwrap();
        let values: Vec<Int> = e.exceptions.iter().map(|x| x.value.clone()).collect();
        assert_eq!(values, vec![int(-1), int(1)]);
        for x in &e.exceptions {
            assert_eq!(x.disposition, Disposition::IntegerParameter);
            assert!(x.witness.is_some());
        }
    }

    #[test]
    fn report_tampering_detected() {
        let mut report = cover_small_s(&int(7));
        assert!(verify_cover_report(&report));
        report.entries[2].y = int(5);
        assert!(!verify_cover_report(&report));

        let mut report = cover_small_s(&int(7));
        report.entries[0].exceptions[0].value += 7;
        assert!(!verify_cover_report(&report));

        let mut report = cover_small_s(&int(7));
        report.entries.remove(3);
        assert!(!verify_cover_report(&report));

        let mut report = cover_search(&int(12));
        report.entries[0].w_prime = int(11);
        assert!(!verify_cover_report(&report));
    }

    #[test]
    fn report_round_trips_through_json() {
        let report = cover_search(&int(12));
        let json = serde_json::to_string(&report).unwrap();
        let back: CoverReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, report);
        assert!(verify_cover_report(&back));
    }

    #[test]
    fn verdict_routes() {
        let v = certify_small_numerator(&int(12), &int(29));
        assert_eq!((v.outcome, v.via), (Outcome::RelationNumber, Route::CoverMember));
        assert!(v.verified);

        // 5 is the (5; 24) class's own exception.
        let v = certify_small_numerator(&int(12), &int(5));
        assert_eq!((v.outcome, v.via), (Outcome::RelationNumber, Route::CoverException));
        assert!(v.verified);

        let v = certify_small_numerator(&int(1), &int(7));
        assert_eq!((v.outcome, v.via), (Outcome::RelationNumber, Route::Reciprocal));
        assert_eq!(v.witness.as_ref().unwrap().to_string(), "b^14 a^-1 b^14");
        assert!(v.verified);

        let v = certify_small_numerator(&int(0), &int(5));
        assert_eq!((v.outcome, v.via), (Outcome::RelationNumber, Route::Integer));
        assert!(v.verified);

        let v = certify_small_numerator(&int(3), &int(-1));
        assert_eq!((v.outcome, v.via), (Outcome::RelationNumber, Route::Integer));
        assert!(v.verified);

        let v = certify_small_numerator(&int(26), &int(-1));
        assert_eq!((v.outcome, v.via), (Outcome::KnownCase, Route::OutsideRange));

        let v = certify_small_numerator(&int(9), &int(2));
        assert_eq!((v.outcome, v.via), (Outcome::KnownCase, Route::OutsideRange));

        let v = certify_small_numerator(&int(10), &int(4));
        assert_eq!((v.outcome, v.via), (Outcome::KnownCase, Route::NotReduced));

        let v = certify_small_numerator(&int(24), &int(7));
        assert_eq!((v.outcome, v.via), (Outcome::Inconclusive, Route::Unsupported));

        let v = certify_small_numerator(&int(12), &int(0));
        assert_eq!((v.outcome, v.via), (Outcome::KnownCase, Route::OutsideRange));
    }

    #[test]
    fn negative_parameters_route_symmetrically() {
        let v = certify_small_numerator(&int(-12), &int(29));
        assert_eq!((v.s.clone(), v.r.clone()), (int(-12), int(29)));
        assert_eq!(v.outcome, Outcome::RelationNumber);
        assert!(v.verified);

        let v = certify_small_numerator(&int(12), &int(-29));
        assert_eq!(v.outcome, Outcome::RelationNumber);
        assert!(v.verified);
    }

    #[test]
    fn verdict_json_shape() {
        let v = certify_small_numerator(&int(2), &int(3));
        let json = serde_json::to_string(&v).unwrap();
        assert!(json.starts_with(r#"{"s":"2","r":"3","outcome":"relation_number","witness":"#));
        assert!(json.ends_with(r#""verified":true,"via":"cover_member"}"#));
    }

    #[test]
    fn small_numerator_minisweep_all_verified() {
        for s in 2i64..=15 {
            for r in 2i64..=120 {
                let v = certify_small_numerator(&int(s), &int(r));
                match v.via {
                    Route::NotReduced | Route::OutsideRange => {
                        assert_eq!(v.outcome, Outcome::KnownCase)
                    }
                    Route::Unsupported => panic!("({s}, {r}) unsupported"),
                    _ => {
                        assert_eq!(v.outcome, Outcome::RelationNumber, "({s}, {r})");
                        assert!(v.verified, "({s}, {r})");
                    }
                }
            }
        }
    }
}
