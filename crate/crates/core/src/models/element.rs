use std::fmt;

use serde::{Deserialize, Serialize};

/// An element `n^[m]`: type `m`, value `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ModelElement {
    #[serde(rename = "type")]
    pub ty: u64,
    pub value: i64,
}

impl ModelElement {
    pub const fn new(ty: u64, value: i64) -> ModelElement {
        ModelElement { ty, value }
    }

    pub const fn standard(value: i64) -> ModelElement {
        ModelElement { ty: 0, value }
    }

    pub fn is_standard(&self) -> bool {
        self.ty == 0
    }
}

impl fmt::Display for ModelElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.value < 0 {
            write!(f, "({})^[{}]", self.value, self.ty)
        } else {
            write!(f, "{}^[{}]", self.value, self.ty)
        }
    }
}

/// `n ↾ m`: `n` unless `n = 0`, in which case `m`.
pub fn uparrow(n: u64, m: u64) -> u64 {
    if n != 0 {
        n
    } else {
        m
    }
}

/// Truncated subtraction `n ∸ m`.
pub fn trunc_sub(n: u64, m: u64) -> u64 {
    n.saturating_sub(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arrow_and_monus() {
        assert_eq!(uparrow(0, 5), 5);
        assert_eq!(uparrow(3, 5), 3);
        assert_eq!(uparrow(0, 0), 0);
        assert_eq!(trunc_sub(5, 3), 2);
        assert_eq!(trunc_sub(3, 5), 0);
        assert_eq!(trunc_sub(0, 0), 0);
    }

    #[test]
    fn printing() {
        assert_eq!(ModelElement::new(1, -1).to_string(), "(-1)^[1]");
        assert_eq!(ModelElement::new(0, 3).to_string(), "3^[0]");
        let j = serde_json::to_string(&ModelElement::new(2, 4)).unwrap();
        assert_eq!(j, r#"{"type":2,"value":4}"#);
    }
}
