//! The two iterative certification algorithms. Both walk the projective
//! orbit of (1, 0) on normalized integer state pairs, record the word of
//! moves as they go, and assemble a verified witness from whichever
//! terminal or cycle ends the walk.

use crate::arith::{gcd, int, shifted_remainder, sign, Int};
use crate::orbit::{is_step_witness, ProjPoint, Step, Word};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;

/// Which algorithm produced a certification.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Algorithm {
    /// Drive both coordinates down with shifted remainders.
    #[serde(rename = "sr")]
    ShiftedRemainder,
    /// Pick the move pair minimizing the next coordinate outright.
    #[serde(rename = "min")]
    MinimizeCoordinates,
}

/// What a certification run concluded.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    /// The walk closed; a witness was assembled.
    RelationNumber,
    /// The iteration budget ran out without closing.
    Inconclusive,
    /// Outside the open regime: r = 0, |q| ≥ 4, s/r not reduced, or an
    /// integer parameter — all classified without iteration.
    KnownCase,
}

/// How a conclusive walk ended: on a terminal state, or by revisiting an
/// earlier state up to the sign of y.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TraceSummary {
    Terminal { point: ProjPoint },
    Cycle { j: u64, i: u64 },
}

/// The result of one certification run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certification {
    #[serde(with = "crate::arith::serde_int")]
    pub s: Int,
    #[serde(with = "crate::arith::serde_int")]
    pub r: Int,
    pub algorithm: Algorithm,
    pub outcome: Outcome,
    #[serde(rename = "iterations")]
    pub iterations_used: u64,
    #[serde(with = "crate::orbit::serde_word_text")]
    pub witness: Option<Word>,
    #[serde(skip)]
    pub trace_summary: Option<TraceSummary>,
    pub verified: bool,
}

/// A parameter the algorithms decline without iterating.
fn is_known_case(s: &Int, r: &Int) -> bool {
    r.is_zero() || s.abs() >= int(4) * r.abs() || !gcd(s, r).is_one() || r.abs().is_one()
}

/// Shared walk state: the move word, the normalized states, the word
/// length at each state, and the revisit index. States become eligible for
/// revisiting two iterations after they are produced, and match on
/// (x, |y|) so a sign flip in y also closes the walk.
struct Walk {
    s: Int,
    r: Int,
    steps: Vec<Step>,
    states: Vec<(Int, Int)>,
    lens: Vec<usize>,
    seen: HashMap<(Int, Int), usize>,
}

/// How one walk ended, before witness assembly.
enum Ending {
    /// y reached 0: the word itself is the witness.
    AxisReturn,
    /// x reached 0: conjugate one b-move by the word.
    ZeroColumn,
    /// x reached 1: close with a single b-syllable.
    UnitColumn { y: Int },
    /// State i matches state j, with equal (true) or opposite (false) y sign.
    Revisit { j: usize, same_sign: bool },
}

impl Walk {
    fn new(s: Int, r: Int) -> Walk {
        Walk { s, r, steps: Vec::new(), states: Vec::new(), lens: Vec::new(), seen: HashMap::new() }
    }

    fn push_step(&mut self, step: Step) {
        debug_assert!(!step.exp.is_zero());
        self.steps.push(step);
    }

    fn push_state(&mut self, x: Int, y: Int) {
        self.states.push((x, y));
        self.lens.push(self.steps.len());
    }

    fn state(&self) -> &(Int, Int) {
        self.states.last().unwrap()
    }

    /// Make the state from two iterations ago matchable.
    fn admit_older_states(&mut self, i: usize) {
        if i >= 2 {
            let (x, y) = &self.states[i - 2];
            self.seen.entry((x.clone(), y.abs())).or_insert(i - 2);
        }
    }

    /// Does the newest state revisit an admitted one?
    fn revisit(&self) -> Option<(usize, bool)> {
        let (x, y) = self.state();
        let j = *self.seen.get(&(x.clone(), y.abs()))?;
        Some((j, sign(y) == sign(&self.states[j].1)))
    }

    fn word(&self) -> Word {
        Word::from_steps(self.steps.iter().cloned())
    }

    /// Assemble the raw witness for an ending.
    fn assemble(&self, ending: &Ending) -> Word {
        let w = self.word();
        match ending {
            Ending::AxisReturn => w,
            Ending::ZeroColumn => {
                let conj = Word::from_steps([Step::b(int(1))]);
                w.concat(&conj).concat(&w.inverse())
            }
            Ending::UnitColumn { y } => {
                let close = Word::from_steps([Step::b(-(&self.r * y))]);
                w.concat(&close)
            }
            Ending::Revisit { j, same_sign } => {
                let at = self.lens[*j];
                let w_j = Word::from_steps(self.steps[..at].iter().cloned());
                let u = Word::from_steps(self.steps[at..].iter().cloned());
                let mid = if *same_sign { u.clone() } else { u.concat(&u.reflected()) };
                w_j.concat(&mid).concat(&w_j.inverse())
            }
        }
    }

    /// Assemble, tidy, and verify a witness against the original parameters.
    fn finish(
        &self,
        orig_s: &Int,
        orig_r: &Int,
        algorithm: Algorithm,
        iterations: u64,
        ending: Ending,
    ) -> Certification {
        let witness = self.assemble(&ending).strip_a_ends();
        let verified = is_step_witness(orig_s, orig_r, &witness).unwrap_or(false);
        let trace_summary = Some(match &ending {
            Ending::Revisit { j, .. } => {
                TraceSummary::Cycle { j: *j as u64, i: (self.states.len() - 1) as u64 }
            }
            Ending::AxisReturn => TraceSummary::Terminal { point: ProjPoint::new(Int::one(), Int::zero()) },
            Ending::ZeroColumn => TraceSummary::Terminal { point: ProjPoint::new(Int::zero(), Int::one()) },
            Ending::UnitColumn { y } => TraceSummary::Terminal { point: ProjPoint::new(Int::one(), y.clone()) },
        });
        Certification {
            s: orig_s.clone(),
            r: orig_r.clone(),
            algorithm,
            outcome: Outcome::RelationNumber,
            iterations_used: iterations,
            witness: Some(witness),
            trace_summary,
            verified,
        }
    }
}

/// Divide out the gcd and make x nonnegative (and y positive when x = 0).
fn normalize_state(x: Int, y: Int) -> (Int, Int) {
    let d = gcd(&x, &y);
    let sigma = sign(&x);
    (&sigma * x / &d, sigma * y / d)
}

fn known_case(s: &Int, r: &Int, algorithm: Algorithm) -> Certification {
    Certification {
        s: s.clone(),
        r: r.clone(),
        algorithm,
        outcome: Outcome::KnownCase,
        iterations_used: 0,
        witness: None,
        trace_summary: None,
        verified: false,
    }
}

fn inconclusive(s: &Int, r: &Int, algorithm: Algorithm, max_iterations: u64) -> Certification {
    Certification {
        s: s.clone(),
        r: r.clone(),
        algorithm,
        outcome: Outcome::Inconclusive,
        iterations_used: max_iterations,
        witness: None,
        trace_summary: None,
        verified: false,
    }
}

/// Certify q = s/r by shifted remainders: each iteration replaces x with
/// the least nonzero shift of x by multiples of s·y (an a-move), then y
/// with the least nonzero shift of r·y by multiples of the new x (a
/// b-move, rescaling x by r).
pub fn rel_num(s: &Int, r: &Int, max_iterations: u64) -> Certification {
    let alg = Algorithm::ShiftedRemainder;
    if is_known_case(s, r) {
        return known_case(s, r, alg);
    }
    let (orig_s, orig_r) = (s, r);
    let (s, r) = if r.is_negative() { (-s, -r) } else { (s.clone(), r.clone()) };

    let mut walk = Walk::new(s.clone(), r.clone());
    let y0 = (&r - shifted_remainder(&r, &s).unwrap()) / &s;
    walk.push_step(Step::b(y0.clone()));
    walk.push_state(r.clone(), y0);

    for i in 1..=max_iterations {
        walk.admit_older_states(i as usize);
        let (x, y) = walk.state().clone();
        let sy = &s * &y;
        let xp = shifted_remainder(&x, &sy).unwrap();
        walk.push_step(Step::a((&xp - &x) / sy));
        if xp.is_zero() {
            return walk.finish(orig_s, orig_r, alg, i, Ending::ZeroColumn);
        }
        let ry = &r * &y;
        let yp = shifted_remainder(&ry, &xp).unwrap();
        walk.push_step(Step::b((&yp - ry) / &xp));
        let (xn, yn) = normalize_state(r.clone() * xp, yp);
        walk.push_state(xn.clone(), yn.clone());
        if yn.is_zero() {
            return walk.finish(orig_s, orig_r, alg, i, Ending::AxisReturn);
        }
        if xn.is_one() {
            return walk.finish(orig_s, orig_r, alg, i, Ending::UnitColumn { y: yn });
        }
        if let Some((j, same_sign)) = walk.revisit() {
            return walk.finish(orig_s, orig_r, alg, i, Ending::Revisit { j, same_sign });
        }
    }
    inconclusive(orig_s, orig_r, alg, max_iterations)
}

/// Pick the move pair (a-exponent u for y, then b-exponent v for x — in
/// move order b^u a^v) minimizing |c + (a·u + b)·v| with u, v ≠ 0, given
/// a = s·x, b = s·r·y, c = r·x. Ties break toward the smallest |u|, then
/// positive u, then the smallest |v|, then positive v. When some u zeroes
/// a·u + b the pair (u, 1) competes with value |c|.
pub fn min3(a: &Int, b: &Int, c: &Int) -> (Int, Int) {
    assert!(!a.is_zero() && !c.is_zero(), "min3 needs a, c nonzero");
    let bound = int(2) * c.abs() + a.abs();
    let (lo, hi) = if a.is_positive() {
        ((-&bound - b).div_ceil(a), (&bound - b).div_floor(a))
    } else {
        ((&bound - b).div_ceil(a), (-&bound - b).div_floor(a))
    };

    let mut best: Option<((Int, Int, bool, Int, bool), (Int, Int))> = None;
    let mut consider = |value: Int, u: &Int, v: Int| {
        let key = (value, u.abs(), u.is_negative(), v.abs(), v.is_negative());
        if best.as_ref().map_or(true, |(k, _)| key < *k) {
            best = Some((key, (u.clone(), v)));
        }
    };

    let mut u = lo;
    while u <= hi {
        if u.is_zero() {
            u += 1;
            continue;
        }
        let w = a * &u + b;
        if w.is_zero() {
            consider(c.abs(), &u, Int::one());
        } else {
            let lo_v = (-c).div_floor(&w);
            let hi_v = (-c).div_ceil(&w);
            consider_candidate(&mut consider, c, &w, lo_v.clone(), &u);
            if hi_v != lo_v {
                consider_candidate(&mut consider, c, &w, hi_v, &u);
            }
        }
        u += 1;
    }
    best.expect("the candidate window is never empty").1
}

fn consider_candidate(
    consider: &mut impl FnMut(Int, &Int, Int),
    c: &Int,
    w: &Int,
    v: Int,
    u: &Int,
) {
    if !v.is_zero() {
        consider((c + w * &v).abs(), u, v);
    }
}

/// Certify q = s/r by outright coordinate minimization: each iteration
/// asks [`min3`] for the b-then-a move pair minimizing the next x.
pub fn rel_num_min(s: &Int, r: &Int, max_iterations: u64) -> Certification {
    let alg = Algorithm::MinimizeCoordinates;
    if is_known_case(s, r) {
        return known_case(s, r, alg);
    }
    let (orig_s, orig_r) = (s, r);
    let (s, r) = if r.is_negative() { (-s, -r) } else { (s.clone(), r.clone()) };

    let mut walk = Walk::new(s.clone(), r.clone());
    let x_raw = shifted_remainder(&r, &s).unwrap();
    let y_raw = (&r - &x_raw) / &s;
    let sigma = sign(&x_raw);
    let (x0, y0) = (&sigma * &x_raw, sigma * &y_raw);
    walk.push_step(Step::b(y_raw.clone()));
    walk.push_step(Step::a(int(-1)));
    walk.push_state(x0.clone(), y0.clone());

    // The opening pair can already be terminal: x0 = 0 forces |s| = 1, and
    // x0 = 1 closes with one b-syllable. (y0 = 0 would need the shifted
    // remainder of r by s to equal r, which never happens.)
    debug_assert!(!y0.is_zero());
    if x0.is_zero() {
        return walk.finish(orig_s, orig_r, alg, 0, Ending::ZeroColumn);
    }
    if x0.is_one() {
        return walk.finish(orig_s, orig_r, alg, 0, Ending::UnitColumn { y: y0 });
    }

    for i in 1..=max_iterations {
        walk.admit_older_states(i as usize);
        let (x, y) = walk.state().clone();
        let (u, v) = min3(&(&s * &x), &(&s * &r * &y), &(&r * &x));
        let yp = &r * &y + &u * &x;
        walk.push_step(Step::b(u));
        if yp.is_zero() {
            return walk.finish(orig_s, orig_r, alg, i, Ending::AxisReturn);
        }
        let xp = &r * &x + &s * &yp * &v;
        walk.push_step(Step::a(v));
        let (xn, yn) = normalize_state(xp, yp);
        walk.push_state(xn.clone(), yn.clone());
        if xn.is_zero() {
            return walk.finish(orig_s, orig_r, alg, i, Ending::ZeroColumn);
        }
        if xn.is_one() {
            return walk.finish(orig_s, orig_r, alg, i, Ending::UnitColumn { y: yn });
        }
        if let Some((j, same_sign)) = walk.revisit() {
            return walk.finish(orig_s, orig_r, alg, i, Ending::Revisit { j, same_sign });
        }
    }
    inconclusive(orig_s, orig_r, alg, max_iterations)
}

/// Run the shifted-remainder algorithm, falling back to coordinate
/// minimization when it stalls; the first conclusive result wins.
pub fn certify(s: &Int, r: &Int, max_iterations: u64) -> Certification {
    let first = rel_num(s, r, max_iterations);
    if first.outcome != Outcome::Inconclusive {
        return first;
    }
    rel_num_min(s, r, max_iterations)
}

/// Certify many parameters in parallel, preserving input order. `algorithm`
/// pins one algorithm; `None` uses [`certify`]'s fallback chain.
pub fn sweep(pairs: &[(Int, Int)], algorithm: Option<Algorithm>, max_iterations: u64) -> Vec<Certification> {
    use rayon::prelude::*;
    pairs
        .par_iter()
        .map(|(s, r)| match algorithm {
            Some(Algorithm::ShiftedRemainder) => rel_num(s, r, max_iterations),
            Some(Algorithm::MinimizeCoordinates) => rel_num_min(s, r, max_iterations),
            None => certify(s, r, max_iterations),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orbit::run_word;
    use std::str::FromStr;

    fn i3(a: i64, b: i64, c: i64) -> (i64, i64) {
        use num_traits::ToPrimitive;
        let (u, v) = min3(&int(a), &int(b), &int(c));
        (u.to_i64().unwrap(), v.to_i64().unwrap())
    }

    #[test]
    fn min3_examples() {
        assert_eq!(i3(348, -493, 204), (2, -1));
        assert_eq!(i3(10, 120, 24), (-10, -1));
        // Exact-division winner: u = -12 zeroes 10u + 120, value |c| = 3.
        assert_eq!(i3(10, 120, 3), (-12, 1));
    }

    #[test]
    fn min3_matches_brute_force() {
        for a in [-9i64, -4, 3, 7, 12] {
            for b in -30i64..=30 {
                for c in [-25i64, -11, 1, 8, 19] {
                    let got = i3(a, b, c);
                    let mut best: Option<((i64, i64, bool, i64, bool), (i64, i64))> = None;
                    for u in -200i64..=200 {
                        if u == 0 {
                            continue;
                        }
                        let w = a * u + b;
                        for v in -200i64..=200 {
                            if v == 0 || (w == 0 && v != 1) {
                                continue;
                            }
                            let val = (c + w * v).abs();
                            let key = (val, u.abs(), u < 0, v.abs(), v < 0);
                            if best.as_ref().map_or(true, |(k, _)| key < *k) {
                                best = Some((key, (u, v)));
                            }
                        }
                    }
                    assert_eq!(got, best.unwrap().1, "min3({a}, {b}, {c})");
                }
            }
        }
    }

    #[test]
    fn known_cases_short_circuit() {
        for (s, r) in [(5, 0), (9, 2), (8, 2), (5, 1), (5, -1), (-9, 2), (0, 3)] {
            let c = rel_num(&int(s), &int(r), 100);
            assert_eq!(c.outcome, Outcome::KnownCase, "({s}, {r})");
            assert_eq!(c.iterations_used, 0);
            assert!(c.witness.is_none());
            assert_eq!(rel_num_min(&int(s), &int(r), 100).outcome, Outcome::KnownCase);
        }
        // |s| just below 4|r| still runs.
        assert_ne!(rel_num(&int(7), &int(2), 100).outcome, Outcome::KnownCase);
    }

    #[test]
    fn minimize_reproduces_anchor_witnesses() {
        let c = rel_num_min(&int(29), &int(17), 5000);
        assert_eq!(c.outcome, Outcome::RelationNumber);
        assert!(c.verified);
        assert_eq!(c.iterations_used, 1);
        assert_eq!(c.witness.as_ref().unwrap().to_string(), "b^1 a^-1 b^2 a^-1 b^-119");
        let terminal = ProjPoint::new(int(1), int(7));
        assert_eq!(c.trace_summary, Some(TraceSummary::Terminal { point: terminal }));

        let c = rel_num_min(&int(5), &int(12), 5000);
        assert_eq!(c.witness.as_ref().unwrap().to_string(), "b^2 a^-1 b^-10 a^-1 b^-12");
        assert!(c.verified);

        let c = rel_num_min(&int(1), &int(5), 5000);
        assert_eq!(c.witness.as_ref().unwrap().to_string(), "b^5 a^-1 b^1 a^1 b^-5");
        assert_eq!(c.iterations_used, 0);
        assert!(c.verified);

        let c = rel_num_min(&int(28), &int(17), 5000);
        assert_eq!(c.outcome, Outcome::RelationNumber);
        assert_eq!(c.iterations_used, 5);
        assert!(c.verified);
    }

    #[test]
    fn anchor_witness_passes_through_published_point() {
        let c = rel_num_min(&int(29), &int(17), 5000);
        let trace = run_word(&int(29), &int(17), c.witness.as_ref().unwrap()).unwrap();
        assert!(trace.contains(&ProjPoint::new(int(204), int(203))));
    }

    #[test]
    fn shifted_remainder_stalls_where_minimization_closes() {
        for r in [17i64] {
            for s in [28i64, 29] {
                let c = rel_num(&int(s), &int(r), 400);
                assert_eq!(c.outcome, Outcome::Inconclusive, "({s}, {r})");
                assert_eq!(c.iterations_used, 400);
                let c = certify(&int(s), &int(r), 400);
                assert_eq!(c.outcome, Outcome::RelationNumber);
                assert_eq!(c.algorithm, Algorithm::MinimizeCoordinates);
                assert!(c.verified);
            }
        }
    }

    #[test]
    fn small_parameters_all_certify_verified() {
        let mut cycles = 0usize;
        for s in 1i64..=12 {
            for r in 2i64..=48 {
                for s in [s, -s] {
                    let c = rel_num(&int(s), &int(r), 5000);
                    match c.outcome {
                        Outcome::KnownCase => continue,
                        Outcome::RelationNumber => {
                            assert!(c.verified, "unverified witness at ({s}, {r})");
                            if matches!(c.trace_summary, Some(TraceSummary::Cycle { .. })) {
                                cycles += 1;
                            }
                        }
                        Outcome::Inconclusive => panic!("({s}, {r}) inconclusive"),
                    }
                    let c = rel_num_min(&int(s), &int(r), 5000);
                    assert_eq!(c.outcome, Outcome::RelationNumber, "({s}, {r}) minimize");
                    assert!(c.verified, "unverified minimize witness at ({s}, {r})");
                }
            }
        }
        assert!(cycles > 0, "the range should exercise cycle endings");
    }

    #[test]
    fn negative_denominators_match_positive() {
        for (s, r) in [(7i64, 3i64), (11, 4), (29, 17)] {
            let pos = certify(&int(s), &int(r), 5000);
            let neg = certify(&int(-s), &int(-r), 5000);
            assert_eq!(pos.outcome, neg.outcome);
            assert_eq!(pos.iterations_used, neg.iterations_used);
            assert!(neg.verified);
            assert_eq!(neg.s, int(-s));
            assert_eq!(neg.r, int(-r));
        }
    }

    #[test]
    fn sweep_preserves_order_and_matches_single_runs() {
        let pairs: Vec<(Int, Int)> =
            [(3i64, 2i64), (9, 2), (29, 17), (5, 12)].map(|(s, r)| (int(s), int(r))).to_vec();
        let results = sweep(&pairs, None, 1000);
        assert_eq!(results.len(), 4);
        for ((s, r), got) in pairs.iter().zip(&results) {
            assert_eq!(*got, certify(s, r, 1000));
        }
        let pinned = sweep(&pairs, Some(Algorithm::ShiftedRemainder), 50);
        assert_eq!(pinned[2].outcome, Outcome::Inconclusive);
    }

    #[test]
    fn certification_json_schema() {
        let c = rel_num_min(&int(29), &int(17), 5000);
        let json = serde_json::to_string(&c).unwrap();
        assert_eq!(
            json,
            r#"{"s":"29","r":"17","algorithm":"min","outcome":"relation_number","iterations":1,"witness":"b^1 a^-1 b^2 a^-1 b^-119","verified":true}"#
        );
        let back: Certification = serde_json::from_str(&json).unwrap();
        assert_eq!(back.witness, c.witness);
        assert_eq!(back.outcome, c.outcome);
        assert!(back.trace_summary.is_none());

        let k = rel_num(&int(9), &int(2), 10);
        let json = serde_json::to_string(&k).unwrap();
        assert_eq!(
            json,
            r#"{"s":"9","r":"2","algorithm":"sr","outcome":"known_case","iterations":0,"witness":null,"verified":false}"#
        );
    }

    #[test]
    fn witnesses_certify_the_claimed_parameter_only() {
        let c = certify(&int(7), &int(3), 1000);
        let w = c.witness.unwrap();
        assert!(is_step_witness(&int(7), &int(3), &w).unwrap());
        assert!(!is_step_witness(&int(7), &int(4), &w).unwrap());
    }

    #[test]
    fn large_coordinates_stay_exact() {
        // A stall run must keep walking on exact integers; probe one state
        // coordinate for plausibility (hundreds of digits, coprime).
        let c = rel_num(&int(35), &int(9), 200);
        assert_eq!(c.outcome, Outcome::Inconclusive);
        let c = rel_num_min(&int(35), &int(9), 200);
        assert_eq!(c.outcome, Outcome::Inconclusive);
        let c = rel_num(&Int::from_str("29").unwrap(), &int(73), 5000);
        assert_eq!(c.outcome, Outcome::RelationNumber);
        assert_eq!(c.iterations_used, 1188);
        assert!(c.verified);
    }
}
