//! Resource caps for exact computations.
//!
//! Every enumeration in this crate is exact, so each one carries a hard cap
//! and fails loudly instead of sampling when the cap is exceeded. Caps can be
//! overridden programmatically or through environment variables
//! (`LISTLAB_ENUM_CAP`, `LISTLAB_SHELL_CAP`, `LISTLAB_POLY_CAP`,
//! `LISTLAB_ORACLE_CAP`).

use crate::error::{Error, Result};

/// Limits for the exact enumerations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    /// Maximum number of codewords enumerated for a weight distribution
    /// (bounds `2^dim`).
    pub enum_codewords: u64,
    /// Maximum number of strings in a weight shell enumeration.
    pub shell_size: u64,
    /// Maximum block length for exact level-coefficient polynomials.
    pub poly_bits: usize,
    /// Maximum size of a full-space brute-force oracle (bounds `2^N`).
    pub oracle_space: u64,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            enum_codewords: 1 << 28,
            shell_size: 1 << 26,
            poly_bits: 4096,
            oracle_space: 1 << 24,
        }
    }
}

impl Caps {
    /// Default caps with environment-variable overrides applied.
    pub fn from_env() -> Self {
        let mut caps = Caps::default();
        if let Some(v) = env_u64("LISTLAB_ENUM_CAP") {
            caps.enum_codewords = v;
        }
        if let Some(v) = env_u64("LISTLAB_SHELL_CAP") {
            caps.shell_size = v;
        }
        if let Some(v) = env_u64("LISTLAB_POLY_CAP") {
            caps.poly_bits = v as usize;
        }
        if let Some(v) = env_u64("LISTLAB_ORACLE_CAP") {
            caps.oracle_space = v;
        }
        caps
    }

    pub fn check_enum(&self, codewords: u128) -> Result<()> {
        check("codeword enumeration", codewords, self.enum_codewords as u128)
    }

    pub fn check_shell(&self, shell: u128) -> Result<()> {
        check("shell enumeration", shell, self.shell_size as u128)
    }

    pub fn check_poly(&self, n_bits: usize) -> Result<()> {
        check("level polynomial", n_bits as u128, self.poly_bits as u128)
    }

    pub fn check_oracle(&self, space: u128) -> Result<()> {
        check("full-space oracle", space, self.oracle_space as u128)
    }
}

fn check(what: &'static str, requested: u128, cap: u128) -> Result<()> {
    if requested > cap {
        Err(Error::CapExceeded {
            what,
            requested,
            cap,
        })
    } else {
        Ok(())
    }
}

fn env_u64(name: &str) -> Option<u64> {
    std::env::var(name).ok()?.trim().parse().ok()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_caps_accept_small_requests() {
        let caps = Caps::default();
        assert!(caps.check_enum(1 << 16).is_ok());
        assert!(caps.check_shell(1 << 16).is_ok());
        assert!(caps.check_poly(64).is_ok());
        assert!(caps.check_oracle(1 << 16).is_ok());
    }

    #[test]
    fn exceeding_a_cap_is_an_error() {
        let caps = Caps::default();
        let err = caps.check_enum(1 << 40).unwrap_err();
        match err {
            Error::CapExceeded { what, .. } => assert_eq!(what, "codeword enumeration"),
            other => panic!("unexpected error {other:?}"),
        }
    }
}
