//! Projective orbit calculus: normalized points, alternating words in the
//! two generators, orbit evaluation, and witness verification by both orbit
//! trace and exact 2×2 matrix product.

use crate::arith::{gcd, int, Int, Rational};
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

/// Errors from word construction and witness checking.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrbitError {
    /// Witness checking demands the odd syllable form b…b.
    #[error("malformed witness: {0}")]
    MalformedWitness(&'static str),
    /// The parameter q = s/r needs r ≠ 0.
    #[error("parameter denominator r must be nonzero")]
    ZeroDenominator,
    /// Word text that does not parse.
    #[error("cannot parse word: {0}")]
    Parse(String),
}

/// Which generator a syllable uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum StepKind {
    #[serde(rename = "a")]
    AMove,
    #[serde(rename = "b")]
    BMove,
}

/// One syllable: a generator with a nonzero exponent.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Step {
    pub kind: StepKind,
    #[serde(with = "crate::arith::serde_int")]
    pub exp: Int,
}

impl Step {
    pub fn a(exp: Int) -> Step {
        Step { kind: StepKind::AMove, exp }
    }

    pub fn b(exp: Int) -> Step {
        Step { kind: StepKind::BMove, exp }
    }
}

/// A reduced alternating word: adjacent syllables use different generators
/// and every exponent is nonzero. Reduction happens on construction.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Word {
    steps: Vec<Step>,
}

impl Word {
    pub fn empty() -> Word {
        Word { steps: Vec::new() }
    }

    /// Build a word, merging adjacent same-kind syllables and dropping the
    /// zero exponents that merging (or the input) produces.
    pub fn from_steps<I: IntoIterator<Item = Step>>(steps: I) -> Word {
        let mut out: Vec<Step> = Vec::new();
        for step in steps {
            if step.exp.is_zero() {
                continue;
            }
            match out.last_mut() {
                Some(last) if last.kind == step.kind => {
                    last.exp += step.exp;
                    if last.exp.is_zero() {
                        out.pop();
                    }
                }
                _ => out.push(step),
            }
        }
        Word { steps: out }
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    /// Number of syllables.
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Concatenation followed by reduction.
    pub fn concat(&self, other: &Word) -> Word {
        Word::from_steps(self.steps.iter().chain(other.steps.iter()).cloned())
    }

    /// Group inverse: reversed syllables with negated exponents.
    pub fn inverse(&self) -> Word {
        Word {
            steps: self
                .steps
                .iter()
                .rev()
                .map(|s| Step { kind: s.kind, exp: -&s.exp })
                .collect(),
        }
    }

    /// Conjugation by diag(1, −1): every exponent negated, order kept.
    pub fn reflected(&self) -> Word {
        Word {
            steps: self.steps.iter().map(|s| Step { kind: s.kind, exp: -&s.exp }).collect(),
        }
    }

    /// Negate only the b-exponents; maps a witness for q to one for −q.
    pub fn negate_b(&self) -> Word {
        Word {
            steps: self
                .steps
                .iter()
                .map(|s| match s.kind {
                    StepKind::AMove => s.clone(),
                    StepKind::BMove => Step::b(-&s.exp),
                })
                .collect(),
        }
    }

    /// Multiply every b-exponent by n ≠ 0; maps a witness for q to one for
    /// q/n, since b_{q/n}^{n·m} acts exactly as b_q^m.
    pub fn scale_b(&self, n: &Int) -> Word {
        debug_assert!(!n.is_zero(), "scale_b needs a nonzero factor");
        Word {
            steps: self
                .steps
                .iter()
                .map(|s| match s.kind {
                    StepKind::AMove => s.clone(),
                    StepKind::BMove => Step::b(&s.exp * n),
                })
                .collect(),
        }
    }

    /// Drop a leading and/or trailing a-syllable; a-moves fix (1, 0) and
    /// preserve lower-triangularity, so witnesses survive stripping.
    pub fn strip_a_ends(&self) -> Word {
        let mut steps = self.steps.clone();
        if matches!(steps.first(), Some(s) if s.kind == StepKind::AMove) {
            steps.remove(0);
        }
        if matches!(steps.last(), Some(s) if s.kind == StepKind::AMove) {
            steps.pop();
        }
        Word { steps }
    }

    /// True when the word is nonempty and starts and ends with a b-syllable
    /// (the odd syllable form witnesses take).
    pub fn is_witness_shaped(&self) -> bool {
        matches!(self.steps.first(), Some(s) if s.kind == StepKind::BMove)
            && matches!(self.steps.last(), Some(s) if s.kind == StepKind::BMove)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.steps.is_empty() {
            return write!(f, "1");
        }
        for (i, s) in self.steps.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            let kind = match s.kind {
                StepKind::AMove => 'a',
                StepKind::BMove => 'b',
            };
            write!(f, "{}^{}", kind, s.exp)?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = OrbitError;

    /// Parse the compact text form, e.g. `b^118 a^-13 b^-1 a^2 b^-767`;
    /// `1` denotes the empty word.
    fn from_str(text: &str) -> Result<Word, OrbitError> {
        let text = text.trim();
        if text.is_empty() || text == "1" {
            return Ok(Word::empty());
        }
        let mut steps = Vec::new();
        for part in text.split_whitespace() {
            let (kind, exp) = part
                .split_once('^')
                .ok_or_else(|| OrbitError::Parse(format!("missing ^ in `{part}`")))?;
            let kind = match kind {
                "a" => StepKind::AMove,
                "b" => StepKind::BMove,
                other => return Err(OrbitError::Parse(format!("unknown generator `{other}`"))),
            };
            let exp = Int::from_str(exp)
                .map_err(|e| OrbitError::Parse(format!("bad exponent in `{part}`: {e}")))?;
            if exp.is_zero() {
                return Err(OrbitError::Parse(format!("zero exponent in `{part}`")));
            }
            steps.push(Step { kind, exp });
        }
        Ok(Word::from_steps(steps))
    }
}

/// Serialize an optional [`Word`] as its compact text form.
pub mod serde_word_text {
    use super::Word;
    use serde::{Deserialize, Deserializer, Serializer};
    use std::str::FromStr;

    pub fn serialize<S: Serializer>(w: &Option<Word>, s: S) -> Result<S::Ok, S::Error> {
        match w {
            Some(w) => s.serialize_some(&w.to_string()),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Word>, D::Error> {
        let text = Option::<String>::deserialize(d)?;
        text.map(|t| Word::from_str(&t).map_err(serde::de::Error::custom))
            .transpose()
    }
}

/// A point of the projective line over ℚ in normalized integer coordinates:
/// coprime, never (0, 0), leading nonzero coordinate positive.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ProjPoint {
    #[serde(with = "crate::arith::serde_int")]
    x: Int,
    #[serde(with = "crate::arith::serde_int")]
    y: Int,
}

impl ProjPoint {
    /// Normalize raw coordinates; (0, 0) is not a projective point.
    pub fn new(x: Int, y: Int) -> ProjPoint {
        assert!(!(x.is_zero() && y.is_zero()), "(0, 0) is not a projective point");
        let d = gcd(&x, &y);
        let (mut x, mut y) = (x / &d, y / &d);
        let lead = if x.is_zero() { &y } else { &x };
        if lead.is_negative() {
            x = -x;
            y = -y;
        }
        ProjPoint { x, y }
    }

    /// The orbit's starting point (1, 0).
    pub fn start() -> ProjPoint {
        ProjPoint { x: Int::one(), y: Int::zero() }
    }

    pub fn x(&self) -> &Int {
        &self.x
    }

    pub fn y(&self) -> &Int {
        &self.y
    }

    /// On the x-axis, i.e. a witness's terminal position.
    pub fn is_on_axis(&self) -> bool {
        self.y.is_zero()
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// Right action of a^m on row vectors: (x, y) ↦ (x + m·y, y).
pub fn apply_a(p: &ProjPoint, m: &Int) -> ProjPoint {
    ProjPoint::new(&p.x + m * &p.y, p.y.clone())
}

/// Right action of b_{s/r}^m: (x, y) ↦ (x, y + (s/r)·m·x), tracked on the
/// scaled integer pair (r·x, r·y + s·m·x) and renormalized.
pub fn apply_b(p: &ProjPoint, m: &Int, s: &Int, r: &Int) -> ProjPoint {
    assert!(!r.is_zero(), "apply_b needs r ≠ 0");
    ProjPoint::new(r * &p.x, r * &p.y + s * m * &p.x)
}

/// The full orbit trace of (1, 0) under the word, one point per syllable,
/// starting point included.
pub fn run_word(s: &Int, r: &Int, w: &Word) -> Result<Vec<ProjPoint>, OrbitError> {
    if r.is_zero() {
        return Err(OrbitError::ZeroDenominator);
    }
    let mut trace = vec![ProjPoint::start()];
    for step in w.steps() {
        let p = trace.last().unwrap();
        let next = match step.kind {
            StepKind::AMove => apply_a(p, &step.exp),
            StepKind::BMove => apply_b(p, &step.exp, s, r),
        };
        trace.push(next);
    }
    Ok(trace)
}

/// Decide whether w certifies q = s/r: the word must be in odd syllable
/// form (b…b) and its orbit must return to the x-axis. A wrong shape is an
/// error, distinct from a well-formed non-witness.
pub fn is_step_witness(s: &Int, r: &Int, w: &Word) -> Result<bool, OrbitError> {
    if r.is_zero() {
        return Err(OrbitError::ZeroDenominator);
    }
    if w.is_empty() {
        return Err(OrbitError::MalformedWitness("empty word"));
    }
    if !w.is_witness_shaped() {
        return Err(OrbitError::MalformedWitness("word must start and end with a b-syllable"));
    }
    let trace = run_word(s, r, w)?;
    Ok(trace.last().unwrap().is_on_axis())
}

/// Exact 2×2 rational matrix [[a11, a12], [a21, a22]].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mat2 {
    pub a11: Rational,
    pub a12: Rational,
    pub a21: Rational,
    pub a22: Rational,
}

impl Mat2 {
    pub fn identity() -> Mat2 {
        Mat2 {
            a11: Rational::one(),
            a12: Rational::zero(),
            a21: Rational::zero(),
            a22: Rational::one(),
        }
    }

    pub fn mul(&self, other: &Mat2) -> Mat2 {
        Mat2 {
            a11: &self.a11 * &other.a11 + &self.a12 * &other.a21,
            a12: &self.a11 * &other.a12 + &self.a12 * &other.a22,
            a21: &self.a21 * &other.a11 + &self.a22 * &other.a21,
            a22: &self.a21 * &other.a12 + &self.a22 * &other.a22,
        }
    }

    pub fn det(&self) -> Rational {
        &self.a11 * &self.a22 - &self.a12 * &self.a21
    }

    pub fn is_identity(&self) -> bool {
        *self == Mat2::identity()
    }

    /// Lower triangular ⟺ the (1,2) entry vanishes ⟺ (1,0) maps to the axis.
    pub fn is_lower_triangular(&self) -> bool {
        self.a12.is_zero()
    }
}

/// Exact product of the word's generator powers at q = s/r; the independent
/// verification channel next to orbit evaluation.
pub fn matrix_of_word(w: &Word, s: &Int, r: &Int) -> Result<Mat2, OrbitError> {
    if r.is_zero() {
        return Err(OrbitError::ZeroDenominator);
    }
    let q = Rational::new(s.clone(), r.clone());
    let mut m = Mat2::identity();
    for step in w.steps() {
        let factor = match step.kind {
            StepKind::AMove => Mat2 {
                a11: Rational::one(),
                a12: Rational::zero(),
                a21: Rational::from_integer(step.exp.clone()),
                a22: Rational::one(),
            },
            StepKind::BMove => Mat2 {
                a11: Rational::one(),
                a12: &q * Rational::from_integer(step.exp.clone()),
                a21: Rational::zero(),
                a22: Rational::one(),
            },
        };
        m = m.mul(&factor);
    }
    Ok(m)
}

/// Convert a step witness into a genuine group relation: the commutator
/// [w·a·w⁻¹, a], reduced. When w is a witness, w·a·w⁻¹ is unitriangular
/// and commutes with a, so the result evaluates to the identity matrix; its
/// syllable length is at most 8(ℓ+1) for a witness with ℓ+1 b-syllables.
pub fn witness_to_identity_word(w: &Word) -> Word {
    let x = Word::from_steps([Step::a(int(1))]);
    let x_inv = x.inverse();
    let w_inv = w.inverse();
    // w x w⁻¹ x w x⁻¹ w⁻¹ x⁻¹
    w.concat(&x)
        .concat(&w_inv)
        .concat(&x)
        .concat(w)
        .concat(&x_inv)
        .concat(&w_inv)
        .concat(&x_inv)
}

/// The frozen witnesses for the integer parameters −3 ≤ n ≤ 3; larger
/// integers are not relation numbers.
pub fn integer_witness(n: &Int) -> Option<Word> {
    use num_traits::ToPrimitive;
    let w = |steps: Vec<Step>| Some(Word::from_steps(steps));
    match n.to_i64()? {
        0 => w(vec![Step::b(int(1))]),
        1 => w(vec![Step::b(int(2)), Step::a(int(-1)), Step::b(int(2))]),
        -1 => w(vec![Step::b(int(-2)), Step::a(int(-1)), Step::b(int(-2))]),
        2 => w(vec![Step::b(int(1)), Step::a(int(-1)), Step::b(int(1))]),
        -2 => w(vec![Step::b(int(-1)), Step::a(int(-1)), Step::b(int(-1))]),
        3 => w(vec![
            Step::b(int(1)),
            Step::a(int(-1)),
            Step::b(int(1)),
            Step::a(int(-1)),
            Step::b(int(1)),
        ]),
        -3 => w(vec![
            Step::b(int(-1)),
            Step::a(int(-1)),
            Step::b(int(-1)),
            Step::a(int(-1)),
            Step::b(int(-1)),
        ]),
        _ => None,
    }
}
