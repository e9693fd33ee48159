//! Boolean signs, edge colors, and the provenance labels carried by
//! vertices of reduced instances.

use std::fmt;
use std::str::FromStr;

/// A boolean value / literal sign, identified with +1 and -1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn negate(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    /// Product under the identification with ±1.
    pub fn times(self, other: Sign) -> Sign {
        if self == other {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

/// Edge color: clause edges and ladder path edges carry a sign, everything
/// else is neutral.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub enum EdgeColor {
    Plus,
    Minus,
    #[default]
    Neutral,
}

impl EdgeColor {
    pub fn from_sign(s: Sign) -> EdgeColor {
        match s {
            Sign::Plus => EdgeColor::Plus,
            Sign::Minus => EdgeColor::Minus,
        }
    }

    pub fn sign(self) -> Option<Sign> {
        match self {
            EdgeColor::Plus => Some(Sign::Plus),
            EdgeColor::Minus => Some(Sign::Minus),
            EdgeColor::Neutral => None,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            EdgeColor::Plus => '+',
            EdgeColor::Minus => '-',
            EdgeColor::Neutral => '0',
        }
    }
}

/// Provenance tag attached to every vertex of a reduced instance.
///
/// Variable and clause indices are 1-based throughout. `PathV` with sign
/// `-` is a vertex of the minus ladder path, `+` of the plus path; at
/// ladder indices congruent to 2 mod 4 the two paths share a `Cross`
/// vertex instead.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum VertexLabel {
    /// Contracted junction vertex between consecutive variable gadgets.
    Y { var: u32 },
    /// Ladder path vertex `index` of variable `var` on the `sign` path.
    PathV { var: u32, sign: Sign, index: u32 },
    /// Shared crossing vertex of the two ladder paths (index ≡ 2 mod 4).
    Cross { var: u32, index: u32 },
    /// Connector splitting a ladder block face (index ≡ 0 mod 4).
    Omega { var: u32, index: u32 },
    /// Connector bridging a crossing on one side (index ≡ 2 mod 4).
    Sigma { var: u32, index: u32 },
    /// Connector bridging a crossing on the other side (index ≡ 2 mod 4).
    Tau { var: u32, index: u32 },
    /// Subdivision point on a ladder edge, joined to the matching B vertex.
    A { var: u32, clause: u32 },
    /// Subdivision point on a clause edge, joined to the matching A vertex.
    B { var: u32, clause: u32 },
    /// Clause vertex.
    Clause { clause: u32 },
    S,
    T,
    SPrime,
    SDoublePrime,
    TPrime,
    TDoublePrime,
}

impl VertexLabel {
    /// Variable index this label belongs to, if any.
    pub fn var(&self) -> Option<u32> {
        match *self {
            VertexLabel::Y { var }
            | VertexLabel::PathV { var, .. }
            | VertexLabel::Cross { var, .. }
            | VertexLabel::Omega { var, .. }
            | VertexLabel::Sigma { var, .. }
            | VertexLabel::Tau { var, .. }
            | VertexLabel::A { var, .. }
            | VertexLabel::B { var, .. } => Some(var),
            _ => None,
        }
    }

    /// True for the vertex kinds that have degree 2 in every reduction
    /// output (the connectors and clause-edge subdivision points).
    pub fn is_connector(&self) -> bool {
        matches!(
            self,
            VertexLabel::Omega { .. }
                | VertexLabel::Sigma { .. }
                | VertexLabel::Tau { .. }
                | VertexLabel::B { .. }
        )
    }
}

impl fmt::Display for VertexLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            VertexLabel::Y { var } => write!(f, "y:{var}"),
            VertexLabel::PathV { var, sign: Sign::Minus, index } => write!(f, "u:{var},{index}"),
            VertexLabel::PathV { var, sign: Sign::Plus, index } => write!(f, "v:{var},{index}"),
            VertexLabel::Cross { var, index } => write!(f, "cross:{var},{index}"),
            VertexLabel::Omega { var, index } => write!(f, "omega:{var},{index}"),
            VertexLabel::Sigma { var, index } => write!(f, "sigma:{var},{index}"),
            VertexLabel::Tau { var, index } => write!(f, "tau:{var},{index}"),
            VertexLabel::A { var, clause } => write!(f, "a:{var},{clause}"),
            VertexLabel::B { var, clause } => write!(f, "b:{var},{clause}"),
            VertexLabel::Clause { clause } => write!(f, "clause:{clause}"),
            VertexLabel::S => write!(f, "s"),
            VertexLabel::T => write!(f, "t"),
            VertexLabel::SPrime => write!(f, "s1"),
            VertexLabel::SDoublePrime => write!(f, "s2"),
            VertexLabel::TPrime => write!(f, "t1"),
            VertexLabel::TDoublePrime => write!(f, "t2"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelParseError(pub String);

impl fmt::Display for LabelParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "bad vertex label: {}", self.0)
    }
}

impl std::error::Error for LabelParseError {}

impl FromStr for VertexLabel {
    type Err = LabelParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || LabelParseError(s.to_string());
        let (kind, rest) = match s.split_once(':') {
            Some((k, r)) => (k, r),
            None => (s, ""),
        };
        let nums: Vec<u32> = if rest.is_empty() {
            Vec::new()
        } else {
            rest.split(',')
                .map(|t| t.parse::<u32>().map_err(|_| bad()))
                .collect::<Result<_, _>>()?
        };
        let two = |l: &dyn Fn(u32, u32) -> VertexLabel| {
            if nums.len() == 2 {
                Ok(l(nums[0], nums[1]))
            } else {
                Err(bad())
            }
        };
        match kind {
            "y" if nums.len() == 1 => Ok(VertexLabel::Y { var: nums[0] }),
            "u" => two(&|var, index| VertexLabel::PathV { var, sign: Sign::Minus, index }),
            "v" => two(&|var, index| VertexLabel::PathV { var, sign: Sign::Plus, index }),
            "cross" => two(&|var, index| VertexLabel::Cross { var, index }),
            "omega" => two(&|var, index| VertexLabel::Omega { var, index }),
            "sigma" => two(&|var, index| VertexLabel::Sigma { var, index }),
            "tau" => two(&|var, index| VertexLabel::Tau { var, index }),
            "a" => two(&|var, clause| VertexLabel::A { var, clause }),
            "b" => two(&|var, clause| VertexLabel::B { var, clause }),
            "clause" if nums.len() == 1 => Ok(VertexLabel::Clause { clause: nums[0] }),
            "s" if nums.is_empty() => Ok(VertexLabel::S),
            "t" if nums.is_empty() => Ok(VertexLabel::T),
            "s1" if nums.is_empty() => Ok(VertexLabel::SPrime),
            "s2" if nums.is_empty() => Ok(VertexLabel::SDoublePrime),
            "t1" if nums.is_empty() => Ok(VertexLabel::TPrime),
            "t2" if nums.is_empty() => Ok(VertexLabel::TDoublePrime),
            _ => Err(bad()),
        }
    }
}
