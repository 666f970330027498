use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

/// The four sign conditions `ε ∈ {+1, −1, >, <}` on the angular component.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Symbol {
    #[serde(rename = "+1")]
    Plus1,
    #[serde(rename = "-1")]
    Minus1,
    #[serde(rename = "pos")]
    Pos,
    #[serde(rename = "neg")]
    Neg,
}

impl Symbol {
    pub const ALL: [Symbol; 4] = [Symbol::Plus1, Symbol::Minus1, Symbol::Pos, Symbol::Neg];

    /// `±1` for the fibre symbols and the tube sign for the others.
    pub fn sign(self) -> i8 {
        match self {
            Symbol::Plus1 | Symbol::Pos => 1,
            Symbol::Minus1 | Symbol::Neg => -1,
        }
    }

    pub fn is_tube(self) -> bool {
        matches!(self, Symbol::Pos | Symbol::Neg)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Symbol::Plus1 => "+1",
            Symbol::Minus1 => "-1",
            Symbol::Pos => "pos",
            Symbol::Neg => "neg",
        }
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Symbol {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "+1" | "1" | "plus1" => Ok(Symbol::Plus1),
            "-1" | "minus1" => Ok(Symbol::Minus1),
            "pos" | ">" => Ok(Symbol::Pos),
            "neg" | "<" => Ok(Symbol::Neg),
            _ => Err(Error::InvalidInput(format!("unknown symbol `{s}` (expected +1, -1, pos, neg)"))),
        }
    }
}
