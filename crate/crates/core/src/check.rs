//! Pass/fail outcome shared by the verification routines.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub pass: bool,
    /// Number of cases examined.
    pub tested: usize,
    /// First counterexample, in operator or label text.
    pub witness: Option<String>,
}

impl CheckOutcome {
    pub fn passed(tested: usize) -> CheckOutcome {
        CheckOutcome {
            pass: true,
            tested,
            witness: None,
        }
    }

    pub fn failed(tested: usize, witness: impl Into<String>) -> CheckOutcome {
        CheckOutcome {
            pass: false,
            tested,
            witness: Some(witness.into()),
        }
    }

    /// Runs `check` on each case and stops at the first failure.
    pub fn scan<T>(cases: impl IntoIterator<Item = T>, mut check: impl FnMut(&T) -> Option<String>) -> CheckOutcome {
        let mut tested = 0;
        for c in cases {
            tested += 1;
            if let Some(w) = check(&c) {
                return CheckOutcome::failed(tested, w);
            }
        }
        CheckOutcome::passed(tested)
    }
}
