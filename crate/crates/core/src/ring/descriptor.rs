use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{find_irreducible, ExtField, PrimeField};
use crate::error::ArithError;

/// Which coefficient ring a computation runs over.
///
/// Text form: `Fp:<p>`, `Fq:<p>^<e>`, `Q`, `Zpk:<p>^<k>`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum RingDescriptor {
    PrimeField {
        p: u64,
    },
    /// `modulus`, when present, pins the defining polynomial (low degree first).
    ExtensionField {
        p: u64,
        e: usize,
        modulus: Option<Vec<u64>>,
    },
    Rationals,
    ResidueRing {
        p: u64,
        k: u32,
    },
}

impl RingDescriptor {
    /// `p` for the finite kinds (the residue characteristic for `Z/p^k`),
    /// `0` for the rationals.
    pub fn characteristic(&self) -> BigUint {
        match self {
            RingDescriptor::PrimeField { p }
            | RingDescriptor::ExtensionField { p, .. }
            | RingDescriptor::ResidueRing { p, .. } => BigUint::from(*p),
            RingDescriptor::Rationals => BigUint::from(0u32),
        }
    }

    /// The extension field this descriptor names. Without a pinned modulus the
    /// defining polynomial is drawn from a stream seeded by `(p, e)`, so the
    /// same descriptor always yields the same field.
    pub fn build_extension(&self) -> Result<ExtField, ArithError> {
        match self {
            RingDescriptor::ExtensionField { p, e, modulus } => match modulus {
                Some(m) => ExtField::new(*p, m.clone()),
                None => {
                    let k = PrimeField::new(*p)?;
                    let mut rng = ChaCha8Rng::seed_from_u64(p.wrapping_mul(1_000_003) ^ *e as u64);
                    let f = find_irreducible(&k, *e, &mut rng);
                    ExtField::new(*p, f.into_coeffs())
                }
            },
            _ => Err(ArithError::InvalidDescriptor(format!(
                "{self} is not an extension field"
            ))),
        }
    }
}

impl fmt::Display for RingDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingDescriptor::PrimeField { p } => write!(f, "Fp:{p}"),
            RingDescriptor::ExtensionField { p, e, .. } => write!(f, "Fq:{p}^{e}"),
            RingDescriptor::Rationals => write!(f, "Q"),
            RingDescriptor::ResidueRing { p, k } => write!(f, "Zpk:{p}^{k}"),
        }
    }
}

fn parse_power(s: &str) -> Result<(u64, u32), ArithError> {
    let bad = || ArithError::InvalidDescriptor(format!("expected <p>^<e>, got {s:?}"));
    let (p, e) = s.split_once('^').ok_or_else(bad)?;
    let p: u64 = p.trim().parse().map_err(|_| bad())?;
    let e: u32 = e.trim().parse().map_err(|_| bad())?;
    if e == 0 {
        return Err(bad());
    }
    Ok((p, e))
}

impl FromStr for RingDescriptor {
    type Err = ArithError;

    fn from_str(s: &str) -> Result<Self, ArithError> {
        let s = s.trim();
        if s == "Q" {
            return Ok(RingDescriptor::Rationals);
        }
        let (kind, rest) = s
            .split_once(':')
            .ok_or_else(|| ArithError::InvalidDescriptor(format!("unknown field {s:?}")))?;
        match kind.trim() {
            "Fp" => {
                let p: u64 = rest
                    .trim()
                    .parse()
                    .map_err(|_| ArithError::InvalidDescriptor(format!("bad prime {rest:?}")))?;
                PrimeField::new(p)?;
                Ok(RingDescriptor::PrimeField { p })
            }
            "Fq" => {
                let (p, e) = parse_power(rest)?;
                PrimeField::new(p)?;
                if e == 1 {
                    return Ok(RingDescriptor::PrimeField { p });
                }
                Ok(RingDescriptor::ExtensionField {
                    p,
                    e: e as usize,
                    modulus: None,
                })
            }
            "Zpk" => {
                let (p, k) = parse_power(rest)?;
                PrimeField::new(p)?;
                Ok(RingDescriptor::ResidueRing { p, k })
            }
            other => Err(ArithError::InvalidDescriptor(format!(
                "unknown field kind {other:?}"
            ))),
        }
    }
}
