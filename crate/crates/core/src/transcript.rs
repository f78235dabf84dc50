//! Per-channel accounting of transmitted qubits and classical bits.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

/// A protocol participant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Party {
    Alice,
    Bob,
    Trent,
    Eve,
}

impl Party {
    fn key_name(self) -> &'static str {
        match self {
            Party::Alice => "alice",
            Party::Bob => "bob",
            Party::Trent => "trent",
            Party::Eve => "eve",
        }
    }
}

impl fmt::Display for Party {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Party::Alice => write!(f, "Alice"),
            Party::Bob => write!(f, "Bob"),
            Party::Trent => write!(f, "Trent"),
            Party::Eve => write!(f, "Eve"),
        }
    }
}

/// What traveled: quantum or classical.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TransmissionKind {
    Qubit,
    ClassicalBit,
}

impl TransmissionKind {
    fn key_name(self) -> &'static str {
        match self {
            TransmissionKind::Qubit => "qubits",
            TransmissionKind::ClassicalBit => "classical_bits",
        }
    }
}

/// One logged transmission.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TranscriptEntry {
    pub from: Party,
    pub to: Party,
    pub kind: TransmissionKind,
    pub count: u64,
    pub label: String,
}

/// Append-only channel log with running per-channel totals.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Transcript {
    entries: Vec<TranscriptEntry>,
    totals: BTreeMap<(Party, Party, TransmissionKind), u64>,
}

impl Transcript {
    pub fn new() -> Self {
        Transcript::default()
    }

    /// Logs a transmission.
    pub fn record(
        &mut self,
        from: Party,
        to: Party,
        kind: TransmissionKind,
        count: u64,
        label: impl Into<String>,
    ) {
        *self.totals.entry((from, to, kind)).or_insert(0) += count;
        self.entries.push(TranscriptEntry {
            from,
            to,
            kind,
            count,
            label: label.into(),
        });
    }

    pub fn entries(&self) -> &[TranscriptEntry] {
        &self.entries
    }

    /// Total traffic on one directed channel.
    pub fn total(&self, from: Party, to: Party, kind: TransmissionKind) -> u64 {
        self.totals.get(&(from, to, kind)).copied().unwrap_or(0)
    }

    /// Total traffic carrying the given label.
    pub fn total_labeled(&self, label: &str) -> u64 {
        self.entries
            .iter()
            .filter(|e| e.label == label)
            .map(|e| e.count)
            .sum()
    }

    /// Appends every entry of `other`.
    pub fn merge(&mut self, other: &Transcript) {
        for e in &other.entries {
            self.record(e.from, e.to, e.kind, e.count, e.label.clone());
        }
    }

    /// Totals as a stable-keyed map, e.g. `"bob->alice:qubits" -> 64`.
    pub fn totals_map(&self) -> BTreeMap<String, u64> {
        self.totals
            .iter()
            .map(|(&(from, to, kind), &count)| {
                (
                    format!("{}->{}:{}", from.key_name(), to.key_name(), kind.key_name()),
                    count,
                )
            })
            .collect()
    }
}

impl Serialize for Transcript {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Wire<'a> {
            entries: &'a [TranscriptEntry],
            totals: BTreeMap<String, u64>,
        }
        Wire {
            entries: &self.entries,
            totals: self.totals_map(),
        }
        .serialize(serializer)
    }
}
