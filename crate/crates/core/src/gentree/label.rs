use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::GentreeError;

/// Generating-tree class of an ascending polyomino.
///
/// Variants are declared in the alphabetical order of their names so that the
/// derived ordering matches the textual one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    C,
    C0,
    C1,
    L,
    L0,
    NC,
    R,
    S,
    S0,
}

impl Family {
    pub const ALL: [Family; 9] = [
        Family::C,
        Family::C0,
        Family::C1,
        Family::L,
        Family::L0,
        Family::NC,
        Family::R,
        Family::S,
        Family::S0,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::C => "C",
            Family::C0 => "C0",
            Family::C1 => "C1",
            Family::L => "L",
            Family::L0 => "L0",
            Family::NC => "NC",
            Family::R => "R",
            Family::S => "S",
            Family::S0 => "S0",
        }
    }

    /// Flipped-stack classes.
    pub fn is_flipped(self) -> bool {
        matches!(self, Family::C0 | Family::L0 | Family::S0)
    }

    pub fn is_centered(self) -> bool {
        self != Family::NC
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = GentreeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| GentreeError::InvalidLabel(format!("unknown family {s:?}")))
    }
}

/// Label `(b, w, r)` of a node, with its family and rectangularity.
///
/// The derived order compares family name first, then `b`, `w`, `r` and
/// `rect`, which is the order used for every textual dump.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TreeLabel {
    pub family: Family,
    pub b: u32,
    pub w: u32,
    pub r: u32,
    pub rect: bool,
}

impl TreeLabel {
    /// Builds a label and checks the family constraints.
    pub fn new(family: Family, b: u32, w: u32, r: u32, rect: bool) -> Result<Self, GentreeError> {
        let label = TreeLabel { family, b, w, r, rect };
        label.validate()?;
        Ok(label)
    }

    /// Label of a non-centered node with `r` cells in its last column.
    pub fn nc(r: u32, rect: bool) -> Self {
        TreeLabel { family: Family::NC, b: 1, w: 0, r, rect }
    }

    pub(crate) fn raw(family: Family, b: u32, w: u32, r: u32, rect: bool) -> Self {
        TreeLabel { family, b, w, r, rect }
    }

    /// The single node of size 2.
    pub fn root() -> Self {
        TreeLabel::raw(Family::L0, 1, 1, 0, true)
    }

    pub fn validate(&self) -> Result<(), GentreeError> {
        let bad = |why: &str| Err(GentreeError::InvalidLabel(format!("{self}: {why}")));
        let TreeLabel { family, b, w, r, rect } = *self;
        if b == 0 {
            return bad("base height must be positive");
        }
        if family.is_flipped() && (!rect || r != 0) {
            return bad("flipped stacks are rectangular with r = 0");
        }
        match family {
            Family::C0 | Family::C if b < 2 => return bad("base height must exceed 1"),
            Family::C1 if b < 2 || w != 0 || r != 0 || rect => {
                return bad("expected b > 1, w = 0, r = 0, not rectangular")
            }
            Family::R if b != 1 || w != 0 || r != 0 || rect => {
                return bad("expected (1,0,0), not rectangular")
            }
            Family::L0 | Family::L | Family::S0 | Family::S if b != 1 => {
                return bad("base height must be 1")
            }
            Family::S if rect && r == 0 => return bad("rectangular S labels need r > 0"),
            Family::NC if b != 1 || w != 0 || r == 0 => return bad("expected b = 1, w = 0, r >= 1"),
            _ => {}
        }
        Ok(())
    }
}

impl fmt::Display for TreeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{},{},{}", self.family, self.b, self.w, self.r, self.rect)
    }
}

impl FromStr for TreeLabel {
    type Err = GentreeError;

    /// Parses the `family,b,w,r,rect` form written by `Display`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let malformed = || GentreeError::InvalidLabel(format!("malformed label {s:?}"));
        let parts: Vec<&str> = s.split(',').collect();
        let [family, b, w, r, rect] = parts.as_slice() else {
            return Err(malformed());
        };
        let num = |x: &str| x.parse::<u32>().map_err(|_| malformed());
        let rect = match *rect {
            "true" => true,
            "false" => false,
            _ => return Err(malformed()),
        };
        TreeLabel::new(family.parse()?, num(b)?, num(w)?, num(r)?, rect)
    }
}
