//! Construction histories.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// The ± branch of the 𝔖₂ and 𝔖₃ constructions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum SignChoice {
    #[default]
    Plus,
    Minus,
}

impl SignChoice {
    pub fn flipped(self) -> SignChoice {
        match self {
            SignChoice::Plus => SignChoice::Minus,
            SignChoice::Minus => SignChoice::Plus,
        }
    }

    fn symbol(self) -> char {
        match self {
            SignChoice::Plus => '+',
            SignChoice::Minus => '-',
        }
    }
}

impl FromStr for SignChoice {
    type Err = Error;

    fn from_str(s: &str) -> Result<SignChoice> {
        match s {
            "plus" | "+" => Ok(SignChoice::Plus),
            "minus" | "-" => Ok(SignChoice::Minus),
            _ => Err(Error::Parse(format!("sign must be plus or minus, got '{s}'"))),
        }
    }
}

/// One construction step; the step at index k produces S̃_{k+2}.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Step {
    Seed,
    DoubleS,
    ExtendS1,
    ExtendS2(SignChoice),
    ExtendS3(SignChoice),
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Step::Seed => f.write_str("seed"),
            Step::DoubleS => f.write_str("double"),
            Step::ExtendS1 => f.write_str("s1"),
            Step::ExtendS2(s) => write!(f, "s2{}", s.symbol()),
            Step::ExtendS3(s) => write!(f, "s3{}", s.symbol()),
        }
    }
}

impl FromStr for Step {
    type Err = Error;

    fn from_str(s: &str) -> Result<Step> {
        Ok(match s {
            "seed" => Step::Seed,
            "double" => Step::DoubleS,
            "s1" => Step::ExtendS1,
            "s2+" => Step::ExtendS2(SignChoice::Plus),
            "s2-" => Step::ExtendS2(SignChoice::Minus),
            "s3+" => Step::ExtendS3(SignChoice::Plus),
            "s3-" => Step::ExtendS3(SignChoice::Minus),
            _ => return Err(Error::Parse(format!("unknown recipe step '{s}'"))),
        })
    }
}

/// Operations applied after construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Modifier {
    Associate,
    Twist,
    /// The k-th composition factor (0-based) of the preceding module.
    Factor(usize),
}

impl fmt::Display for Modifier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Modifier::Associate => f.write_str("associate"),
            Modifier::Twist => f.write_str("twist"),
            Modifier::Factor(k) => write!(f, "factor{k}"),
        }
    }
}

impl FromStr for Modifier {
    type Err = Error;

    fn from_str(s: &str) -> Result<Modifier> {
        match s {
            "associate" => Ok(Modifier::Associate),
            "twist" => Ok(Modifier::Twist),
            _ => s
                .strip_prefix("factor")
                .and_then(|k| k.parse().ok())
                .map(Modifier::Factor)
                .ok_or_else(|| Error::Parse(format!("unknown recipe modifier '{s}'"))),
        }
    }
}

/// How a representation was produced.
///
/// An empty step list marks a representation of unknown provenance (for
/// instance hand-written matrices); otherwise there is exactly one step per
/// generator.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Recipe {
    characteristic: u64,
    steps: Vec<Step>,
    modifiers: Vec<Modifier>,
}

impl Recipe {
    pub fn new(characteristic: u64, steps: Vec<Step>, modifiers: Vec<Modifier>) -> Recipe {
        Recipe {
            characteristic,
            steps,
            modifiers,
        }
    }

    pub fn unspecified(characteristic: u64) -> Recipe {
        Recipe::new(characteristic, Vec::new(), Vec::new())
    }

    pub fn seed(characteristic: u64) -> Recipe {
        Recipe::new(characteristic, vec![Step::Seed], Vec::new())
    }

    pub fn characteristic(&self) -> u64 {
        self.characteristic
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn modifiers(&self) -> &[Modifier] {
        &self.modifiers
    }

    /// The step that produced S̃ₘ.
    pub fn step_at(&self, m: usize) -> Option<Step> {
        m.checked_sub(2).and_then(|k| self.steps.get(k)).copied()
    }

    pub fn is_unspecified(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn with_step(&self, step: Step) -> Recipe {
        let mut r = self.clone();
        r.steps.push(step);
        r
    }

    pub fn with_modifier(&self, m: Modifier) -> Recipe {
        let mut r = self.clone();
        r.modifiers.push(m);
        r
    }

    /// Inverse of `Display`: step and modifier words separated by spaces.
    pub fn parse(characteristic: u64, s: &str) -> Result<Recipe> {
        let mut r = Recipe::unspecified(characteristic);
        let s = s.trim();
        if s == "-" {
            return Ok(r);
        }
        for word in s.split_whitespace() {
            if let Ok(step) = word.parse::<Step>() {
                if !r.modifiers.is_empty() {
                    return Err(Error::Parse(format!("step '{word}' after a modifier")));
                }
                r.steps.push(step);
            } else {
                r.modifiers.push(word.parse()?);
            }
        }
        Ok(r)
    }

    /// Structural consistency with a representation of S̃ₙ.
    pub fn validate(&self, n: usize) -> Result<()> {
        if self.steps.is_empty() {
            return Ok(());
        }
        let bad = |why: String| Err(Error::InvalidRepresentation(format!("recipe: {why}")));
        if self.steps.len() != n - 1 {
            return bad(format!("{} steps for n = {n}", self.steps.len()));
        }
        if self.steps[0] != Step::Seed || self.steps[1..].contains(&Step::Seed) {
            return bad("seed must come first, once".into());
        }
        for m in 3..=n {
            match self.step_at(m) {
                Some(Step::ExtendS2(_)) if self.step_at(m - 1) != Some(Step::DoubleS) => {
                    return bad(format!("s2 at {m} without a doubling at {}", m - 1));
                }
                Some(Step::ExtendS3(_))
                    if m < 8
                        || self.step_at(m - 3) != Some(Step::DoubleS)
                        || self.step_at(m - 2) != Some(Step::ExtendS1)
                        || self.step_at(m - 1) != Some(Step::DoubleS) =>
                {
                    return bad(format!("s3 at {m} without the double, s1, double prefix"));
                }
                _ => {}
            }
        }
        Ok(())
    }
}

impl fmt::Display for Recipe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut words: Vec<String> = self.steps.iter().map(Step::to_string).collect();
        words.extend(self.modifiers.iter().map(Modifier::to_string));
        if words.is_empty() {
            f.write_str("-")
        } else {
            f.write_str(&words.join(" "))
        }
    }
}
