//! Ground set labels.
//!
//! Labels are strings. Integer-looking labels are normalized to their
//! canonical decimal form and sort numerically before any non-numeric
//! label, so the ground sets `{1, ..., 10}` order the way people expect.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// A single ground set element.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Label(String);

/// A set of labels with canonical (sorted) iteration order.
pub type LabelSet = BTreeSet<Label>;

impl Label {
    pub fn new(s: impl Into<String>) -> Self {
        let s = s.into();
        // canonical decimal form for integer-looking labels
        if let Ok(n) = s.trim().parse::<u64>() {
            Label(n.to_string())
        } else {
            Label(s)
        }
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    fn numeric(&self) -> Option<u64> {
        self.0.parse().ok()
    }
}

impl PartialOrd for Label {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Label {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        match (self.numeric(), other.numeric()) {
            (Some(a), Some(b)) => a.cmp(&b),
            (Some(_), None) => std::cmp::Ordering::Less,
            (None, Some(_)) => std::cmp::Ordering::Greater,
            (None, None) => self.0.cmp(&other.0),
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Debug for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl From<&str> for Label {
    fn from(s: &str) -> Self {
        Label::new(s)
    }
}

impl From<i64> for Label {
    fn from(n: i64) -> Self {
        Label(n.to_string())
    }
}

impl From<i32> for Label {
    fn from(n: i32) -> Self {
        Label(n.to_string())
    }
}

impl From<u64> for Label {
    fn from(n: u64) -> Self {
        Label(n.to_string())
    }
}

impl Serialize for Label {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        ser.serialize_str(&self.0)
    }
}

impl<'de> Deserialize<'de> for Label {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Str(String),
            Int(i64),
        }
        Ok(match Raw::deserialize(de)? {
            Raw::Str(s) => Label::new(s),
            Raw::Int(n) => Label(n.to_string()),
        })
    }
}

/// Convenience constructor for a label set.
pub fn labels<I, T>(items: I) -> LabelSet
where
    I: IntoIterator<Item = T>,
    T: Into<Label>,
{
    items.into_iter().map(Into::into).collect()
}

/// Renders a label set as sorted comma-joined labels, e.g. `"1,2,4"`.
pub fn set_key(set: &LabelSet) -> String {
    set.iter()
        .map(Label::to_string)
        .collect::<Vec<_>>()
        .join(",")
}
