//! The four protocol phases as executable procedures over GHZ triplets:
//! initialization and distribution, signing, authentication with message
//! recovery, and fingerprint-based arbitration.

mod arbitration;
mod session;

pub use arbitration::{
    arbitrate, deposit_fingerprint, ArbitrationRecord, ArbitrationVerdict, FingerprintParams,
};
pub use session::{
    verify, Authentication, BellRecord, GhzSession, Holder, SessionPhase, SessionTrace,
    SignatureOp, SignatureRecord, TransitParticle, Verification,
};
