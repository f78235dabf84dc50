//! The signing session: N GHZ triplets walked through distribution,
//! signing, return and authentication.
//!
//! Bob prepares the triplets and keeps particles 1 and 2; particle 3 of
//! each triplet travels to Alice, picks up the signature as a local
//! bit-flip per message bit, and travels back. Bob then disentangles each
//! triplet with a CNOT and reads one message bit out of a Bell-basis
//! measurement on the last two qubits.

use rand::Rng;
use serde::Serialize;

use crate::bits::BitString;
use crate::error::{Error, Result};
use crate::quantum::{BellOutcome, QubitIndex};
use crate::transcript::{Party, Transcript, TransmissionKind};
use crate::StateVector64;

/// Phases a session moves through, strictly forward.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SessionPhase {
    Initialized,
    ParticlesSentToAlice,
    Signed,
    ReturnedToBob,
    Authenticated,
    Arbitrated,
}

/// Who holds a particle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Holder {
    Alice,
    Bob,
    InTransit,
}

/// Per-bit signing operation: identity for 0, bit-flip for 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SignatureOp {
    Identity,
    SigmaX,
}

/// What Alice did to each particle, bound to the session it happened in.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignatureRecord {
    operations: Vec<SignatureOp>,
    session_id: u64,
}

impl SignatureRecord {
    pub fn operations(&self) -> &[SignatureOp] {
        &self.operations
    }

    pub fn session_id(&self) -> u64 {
        self.session_id
    }
}

/// One triplet's Bell measurement during authentication.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BellRecord {
    pub outcome: BellOutcome,
    /// Born probability the observed outcome had.
    pub probability: f64,
    /// True for Φ−/Ψ−, which honest runs never produce.
    pub anomalous: bool,
}

/// Result of the authentication sweep.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Authentication {
    /// The recovered message M′.
    pub recovered: BitString,
    /// Per-triplet Bell measurement records, in triplet order.
    pub records: Vec<BellRecord>,
    /// 1-based positions whose outcome was anomalous.
    pub anomalies: Vec<usize>,
}

impl Authentication {
    /// Smallest Born probability seen across the sweep; 1 in honest runs.
    pub fn min_probability(&self) -> f64 {
        self.records
            .iter()
            .map(|r| r.probability)
            .fold(f64::INFINITY, f64::min)
    }
}

/// Outcome of comparing the decrypted and recovered messages.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verification {
    pub accept: bool,
    /// 1-based positions where the two strings differ.
    pub mismatches: Vec<usize>,
}

/// Channel-level access to one in-transit particle.
///
/// An interceptor on the return leg can apply local unitaries to the
/// carried particle and nothing else.
pub struct TransitParticle<'a> {
    state: &'a mut StateVector64,
    particle: QubitIndex,
}

impl TransitParticle<'_> {
    /// σx on the carried particle.
    pub fn apply_bit_flip(&mut self) -> Result<()> {
        self.state.apply_x(self.particle)
    }

    /// σz on the carried particle.
    pub fn apply_phase_flip(&mut self) -> Result<()> {
        self.state.apply_z(self.particle)
    }
}

/// N tracked GHZ triplets with particle custody and phase.
#[derive(Debug, Clone)]
pub struct GhzSession {
    id: u64,
    n_bits: usize,
    triplets: Vec<StateVector64>,
    custody: Vec<[Holder; 3]>,
    phase: SessionPhase,
    phase_history: Vec<SessionPhase>,
    transcript: Transcript,
    authentication: Option<Authentication>,
}

/// Serializable session trace.
#[derive(Debug, Clone, Serialize)]
pub struct SessionTrace {
    pub session_id: u64,
    pub n_bits: usize,
    pub phase_history: Vec<SessionPhase>,
    pub bell_records: Option<Vec<BellRecord>>,
    pub anomaly_positions: Vec<usize>,
    pub transcript: Transcript,
}

const PARTICLE_3: QubitIndex = QubitIndex::new(3);

impl GhzSession {
    /// Prepares N fresh triplets, all particles with Bob.
    pub fn init<R: Rng + ?Sized>(n_bits: usize, rng: &mut R) -> Result<Self> {
        if n_bits == 0 {
            return Err(Error::invalid("session needs at least one message bit"));
        }
        Ok(GhzSession {
            id: rng.random(),
            n_bits,
            triplets: (0..n_bits).map(|_| StateVector64::ghz()).collect(),
            custody: vec![[Holder::Bob; 3]; n_bits],
            phase: SessionPhase::Initialized,
            phase_history: vec![SessionPhase::Initialized],
            transcript: Transcript::new(),
            authentication: None,
        })
    }

    pub fn id(&self) -> u64 {
        self.id
    }

    pub fn n_bits(&self) -> usize {
        self.n_bits
    }

    pub fn phase(&self) -> SessionPhase {
        self.phase
    }

    pub fn phase_history(&self) -> &[SessionPhase] {
        &self.phase_history
    }

    /// Custody of triplet `index` (0-based), particles 1..3.
    pub fn custody(&self, index: usize) -> [Holder; 3] {
        self.custody[index]
    }

    /// The state of triplet `index` (0-based).
    pub fn triplet(&self, index: usize) -> &StateVector64 {
        &self.triplets[index]
    }

    /// Quantum traffic this session has generated.
    pub fn transcript(&self) -> &Transcript {
        &self.transcript
    }

    pub fn authentication(&self) -> Option<&Authentication> {
        self.authentication.as_ref()
    }

    /// Bob sends each triplet's particle 3 to Alice.
    pub fn send_particles_to_alice(&mut self) -> Result<()> {
        self.expect_phase(SessionPhase::Initialized, "send particles to Alice")?;
        for c in &mut self.custody {
            c[2] = Holder::Alice;
        }
        self.transcript.record(
            Party::Bob,
            Party::Alice,
            TransmissionKind::Qubit,
            self.n_bits as u64,
            "ghz particle 3",
        );
        self.advance(SessionPhase::ParticlesSentToAlice);
        Ok(())
    }

    /// Alice signs: σx on particle 3 of triplet i wherever M(i) = 1.
    pub fn sign(&mut self, message: &BitString) -> Result<SignatureRecord> {
        self.expect_phase(SessionPhase::ParticlesSentToAlice, "sign")?;
        if message.len() != self.n_bits {
            return Err(Error::invalid(format!(
                "message length {} does not match the {}-triplet session",
                message.len(),
                self.n_bits
            )));
        }
        let mut operations = Vec::with_capacity(self.n_bits);
        for (triplet, bit) in self.triplets.iter_mut().zip(message.iter()) {
            if bit == 1 {
                triplet.apply_x(PARTICLE_3)?;
                operations.push(SignatureOp::SigmaX);
            } else {
                operations.push(SignatureOp::Identity);
            }
        }
        self.advance(SessionPhase::Signed);
        Ok(SignatureRecord {
            operations,
            session_id: self.id,
        })
    }

    /// Alice returns the signed particles to Bob.
    pub fn return_particles_to_bob(&mut self, record: &SignatureRecord) -> Result<()> {
        self.return_particles_intercepted(record, |_, _| Ok(()))
    }

    /// Return leg with a channel interceptor: the closure sees each
    /// in-transit particle (1-based triplet position) and may apply local
    /// unitaries to it. Attack scenarios model capture/resend here.
    pub fn return_particles_intercepted<F>(
        &mut self,
        record: &SignatureRecord,
        mut interceptor: F,
    ) -> Result<()>
    where
        F: FnMut(usize, &mut TransitParticle<'_>) -> Result<()>,
    {
        self.expect_phase(SessionPhase::Signed, "return particles to Bob")?;
        if record.session_id != self.id {
            return Err(Error::invalid(
                "signature record belongs to a different session",
            ));
        }
        for c in &mut self.custody {
            c[2] = Holder::InTransit;
        }
        for (i, state) in self.triplets.iter_mut().enumerate() {
            let mut particle = TransitParticle {
                state,
                particle: PARTICLE_3,
            };
            interceptor(i + 1, &mut particle)?;
        }
        for c in &mut self.custody {
            c[2] = Holder::Bob;
        }
        self.transcript.record(
            Party::Alice,
            Party::Bob,
            TransmissionKind::Qubit,
            self.n_bits as u64,
            "signed particle 3",
        );
        self.advance(SessionPhase::ReturnedToBob);
        Ok(())
    }

    /// Bob recovers M′: per triplet, CNOT with qubit 2 as control and
    /// qubit 1 as target, then a Bell measurement on qubits 2 and 3.
    /// Φ outcomes decode to 0, Ψ to 1; minus outcomes are flagged as
    /// tamper evidence at their 1-based position.
    pub fn authenticate<R: Rng + ?Sized>(&mut self, rng: &mut R) -> Result<Authentication> {
        self.expect_phase(SessionPhase::ReturnedToBob, "authenticate")?;
        let control = QubitIndex::new(2);
        let target = QubitIndex::new(1);
        let mut bits = Vec::with_capacity(self.n_bits);
        let mut records = Vec::with_capacity(self.n_bits);
        let mut anomalies = Vec::new();
        for (i, triplet) in self.triplets.iter_mut().enumerate() {
            triplet.apply_cnot(control, target)?;
            let m = triplet.bell_measure(QubitIndex::new(2), QubitIndex::new(3), rng)?;
            bits.push(m.outcome.recovered_bit());
            let anomalous = m.outcome.is_anomalous();
            if anomalous {
                anomalies.push(i + 1);
            }
            records.push(BellRecord {
                outcome: m.outcome,
                probability: m.probability,
                anomalous,
            });
        }
        let auth = Authentication {
            recovered: BitString::from_bits(bits)?,
            records,
            anomalies,
        };
        self.authentication = Some(auth.clone());
        self.advance(SessionPhase::Authenticated);
        Ok(auth)
    }

    /// Marks the session as having gone to arbitration.
    pub fn mark_arbitrated(&mut self) -> Result<()> {
        self.expect_phase(SessionPhase::Authenticated, "arbitrate")?;
        self.advance(SessionPhase::Arbitrated);
        Ok(())
    }

    /// Serializable trace of what happened.
    pub fn trace(&self) -> SessionTrace {
        SessionTrace {
            session_id: self.id,
            n_bits: self.n_bits,
            phase_history: self.phase_history.clone(),
            bell_records: self.authentication.as_ref().map(|a| a.records.clone()),
            anomaly_positions: self
                .authentication
                .as_ref()
                .map(|a| a.anomalies.clone())
                .unwrap_or_default(),
            transcript: self.transcript.clone(),
        }
    }

    fn expect_phase(&self, expected: SessionPhase, operation: &str) -> Result<()> {
        if self.phase != expected {
            return Err(Error::ProtocolOrder(format!(
                "cannot {operation}: session is in phase {:?}, expected {:?}",
                self.phase, expected
            )));
        }
        Ok(())
    }

    fn advance(&mut self, phase: SessionPhase) {
        self.phase = phase;
        self.phase_history.push(phase);
    }
}

/// Compares the decrypted message against the recovered one; accepts on
/// bitwise equality and lists 1-based mismatch positions otherwise.
pub fn verify(m_decrypted: &BitString, m_recovered: &BitString) -> Result<Verification> {
    if m_decrypted.len() != m_recovered.len() {
        return Err(Error::invalid(format!(
            "length mismatch: decrypted {} bits, recovered {}",
            m_decrypted.len(),
            m_recovered.len()
        )));
    }
    let mismatches = m_decrypted.xor(m_recovered)?.ones_1based();
    Ok(Verification {
        accept: mismatches.is_empty(),
        mismatches,
    })
}
