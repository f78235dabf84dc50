//! Dispute resolution through fingerprint comparison.
//!
//! Before authentication completes, Alice deposits copies of the message
//! fingerprint with the arbitrator Trent. On a dispute, fresh fingerprints
//! of the disputed message — rebuilt with Alice's private code parameters —
//! are swap-tested against the deposit: the signature claim stands exactly
//! when the repeated test reports Equal.

use std::cell::{Cell, RefCell};

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::bits::BitString;
use crate::error::{Error, Result};
use crate::fingerprint::{repeated_swap_test, ComparisonVerdict, FingerprintState, LinearCode};
use crate::transcript::{Party, Transcript, TransmissionKind};

/// Alice's private fingerprinting parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FingerprintParams {
    /// Requested expansion ratio c (> 1).
    pub c_requested: f64,
    /// Seed the generator matrix is derived from.
    pub seed: u64,
    /// Fingerprint copies deposited with Trent; also the swap-test trial
    /// count during arbitration.
    pub copies: usize,
}

/// Trent's judgment on a disputed signature.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ArbitrationVerdict {
    Valid,
    Invalid,
    NotInvoked,
}

/// Trent's case file: the deposited fingerprint copies and, once a dispute
/// ran, the verdict.
#[derive(Debug)]
pub struct ArbitrationRecord {
    params: FingerprintParams,
    message_len: usize,
    code: LinearCode,
    deposit: Vec<FingerprintState<f64>>,
    verdict: ArbitrationVerdict,
}

impl ArbitrationRecord {
    pub fn params(&self) -> FingerprintParams {
        self.params
    }

    pub fn message_len(&self) -> usize {
        self.message_len
    }

    pub fn verdict(&self) -> ArbitrationVerdict {
        self.verdict
    }

    /// Deposited copies Trent still holds.
    pub fn remaining_copies(&self) -> usize {
        self.deposit.len()
    }

    /// The deposited states (inspection only; arbitration consumes them).
    pub fn deposited(&self) -> &[FingerprintState<f64>] {
        &self.deposit
    }

    /// The code the deposit was built under.
    pub fn code(&self) -> &LinearCode {
        &self.code
    }
}

/// Alice builds `params.copies` fingerprints of `message` and sends them
/// to Trent; the transcript logs the qubit cost of the deposit.
pub fn deposit_fingerprint(
    message: &BitString,
    params: FingerprintParams,
    transcript: &mut Transcript,
) -> Result<ArbitrationRecord> {
    if params.copies == 0 {
        return Err(Error::invalid("at least one fingerprint copy must be deposited"));
    }
    let code = LinearCode::make(message.len(), params.c_requested, params.seed)?;
    let deposit: Vec<FingerprintState<f64>> = (0..params.copies)
        .map(|_| code.fingerprint(message))
        .collect::<Result<_>>()?;
    transcript.record(
        Party::Alice,
        Party::Trent,
        TransmissionKind::Qubit,
        (params.copies * code.fingerprint_qubits()) as u64,
        "fingerprint deposit",
    );
    Ok(ArbitrationRecord {
        params,
        message_len: message.len(),
        code,
        deposit,
        verdict: ArbitrationVerdict::NotInvoked,
    })
}

/// Trent resolves a dispute over `claimed_message`.
///
/// Fresh fingerprints of the claim, rebuilt under Alice's parameters, are
/// swap-tested against the deposited copies — one deposited copy per
/// trial, up to `params.copies` trials, stopping at the first rejection.
/// Valid exactly when the repeated test reports Equal.
pub fn arbitrate<R: Rng + ?Sized>(
    record: &mut ArbitrationRecord,
    claimed_message: &BitString,
    transcript: &mut Transcript,
    rng: &mut R,
) -> Result<ArbitrationVerdict> {
    if claimed_message.len() != record.message_len {
        return Err(Error::invalid(format!(
            "claimed message has {} bits, deposit was made for {}",
            claimed_message.len(),
            record.message_len
        )));
    }
    let trials = record.params.copies;
    if record.deposit.len() < trials {
        return Err(Error::Resource(format!(
            "arbitration needs {trials} deposited copies, Trent holds {}",
            record.deposit.len()
        )));
    }

    let deposit = RefCell::new(std::mem::take(&mut record.deposit));
    let rebuilt = Cell::new(0usize);
    let code = &record.code;
    let outcome = repeated_swap_test(
        || {
            deposit
                .borrow_mut()
                .pop()
                .ok_or_else(|| Error::Resource("deposited fingerprint copies exhausted".into()))
        },
        || {
            rebuilt.set(rebuilt.get() + 1);
            code.fingerprint(claimed_message)
        },
        trials,
        rng,
    );
    record.deposit = deposit.into_inner();
    let outcome = outcome?;

    transcript.record(
        Party::Alice,
        Party::Trent,
        TransmissionKind::Qubit,
        (rebuilt.get() * record.code.fingerprint_qubits()) as u64,
        "arbitration fingerprint",
    );

    record.verdict = match outcome {
        ComparisonVerdict::Equal => ArbitrationVerdict::Valid,
        ComparisonVerdict::Unequal => ArbitrationVerdict::Invalid,
    };
    Ok(record.verdict)
}
