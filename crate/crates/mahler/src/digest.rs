//! Stable input digests for certificate steps.
//!
//! FNV-1a over the canonical text rendering of the inputs. The hash is fixed
//! by this crate, not by the standard library, so digests are reproducible
//! across runs and toolchains.

const FNV_OFFSET: u64 = 0xcbf2_9ce4_8422_2325;
const FNV_PRIME: u64 = 0x0000_0100_0000_01b3;

pub fn fnv1a64(bytes: &[u8]) -> u64 {
    let mut h = FNV_OFFSET;
    for &b in bytes {
        h ^= b as u64;
        h = h.wrapping_mul(FNV_PRIME);
    }
    h
}

/// Hex digest of a canonical text form.
pub fn digest_text(text: &str) -> String {
    format!("{:016x}", fnv1a64(text.as_bytes()))
}
