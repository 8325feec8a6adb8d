//! The JSON run report.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

/// Hex SHA-256 of the input bytes.
pub fn digest(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

/// Live cells per dimension, 0 through 3.
pub type Counts = [usize; 4];

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellCounts {
    pub cubical: Counts,
    pub surface: Counts,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub polyhedral: Option<Counts>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TerminationConfig {
    /// `coplanar` or `min-edges`.
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub min_edges: Option<usize>,
}

/// A nonzero cup coefficient: `(α_i ⌣ α_j)(γ_k) = 1` with `i < j`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CupTriple {
    pub i: usize,
    pub j: usize,
    pub k: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub input_digest: String,
    pub counts: CellCounts,
    pub critical_vertices: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub termination: Option<TerminationConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub diagonal: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub betti: Option<[usize; 3]>,
    #[serde(default)]
    pub cup: Vec<CupTriple>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pairing_rank: Option<usize>,
    /// Named verification outcomes, present when checks were run.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub checks: BTreeMap<String, bool>,
    /// Wall time per stage in microseconds. Not part of the deterministic
    /// content; see [`Report::masked`].
    #[serde(default)]
    pub timings_us: BTreeMap<String, u64>,
}

impl Report {
    /// The report with every timing set to zero.
    pub fn masked(&self) -> Report {
        let mut r = self.clone();
        r.timings_us.values_mut().for_each(|t| *t = 0);
        r
    }

    pub fn passed(&self) -> bool {
        self.checks.values().all(|&ok| ok)
    }

    /// Pretty JSON with keys sorted at every level, newline-terminated.
    pub fn to_json(&self) -> String {
        // serde_json's map type is ordered, so going through `Value` sorts
        // struct fields as well
        let value = serde_json::to_value(self).expect("report is plain data");
        let mut s = serde_json::to_string_pretty(&value).expect("report is plain data");
        s.push('\n');
        s
    }

    pub fn from_json(s: &str) -> Result<Report, serde_json::Error> {
        serde_json::from_str(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sha256_of_known_input() {
        assert_eq!(digest(b"abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    }

    #[test]
    fn keys_are_sorted_and_empty_cup_is_written() {
        let r = Report { input_digest: "x".into(), ..Default::default() };
        let json = r.to_json();
        assert!(json.contains("\"cup\": []"));
        let keys: Vec<usize> = ["counts", "critical_vertices", "cup", "input_digest", "timings_us"]
            .iter()
            .map(|k| json.find(&format!("\"{k}\"")).unwrap())
            .collect();
        assert!(keys.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(Report::from_json(&json).unwrap(), r);
    }

    #[test]
    fn masking_keeps_keys() {
        let mut r = Report::default();
        r.timings_us.insert("build".into(), 123);
        let m = r.masked();
        assert_eq!(m.timings_us["build"], 0);
        assert_ne!(m, r);
    }
}
