//! Input systems and their text format.
//!
//! ```text
//! # comment
//! vars: 2
//! field: Fp:10007
//! epsilon: 0.01
//! delta_bound: 4        (optional)
//! height: 8             (optional, rationals only)
//! degrees: 2, 1         (optional, one per F line)
//! F: x2^2 - x1
//! F: x2 - x1 - 1
//! G: x1 + 3             (optional, at most one)
//! ```

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{parse_polys, ParseError, Slp};
use crate::ring::RingDescriptor;

/// A system `F_1 = ... = F_r = 0, G != 0` in `n` variables.
///
/// The program has `r + 1` outputs: `F_1 .. F_r`, then `G` (the constant `1`
/// when no `G` line is given).
#[derive(Clone, Debug, PartialEq)]
pub struct SystemSpec {
    pub n: usize,
    pub field: RingDescriptor,
    pub epsilon: BigRational,
    pub delta_bound: Option<u64>,
    pub height: Option<u64>,
    pub slp: Slp<BigInt>,
    /// Degree bound for each `F_i`, then for `G`.
    pub degrees: Vec<usize>,
    pub has_g: bool,
    /// Positive integers the polynomials were scaled by to clear denominators.
    pub multipliers: Vec<BigInt>,
}

/// Parses a probability given as a decimal (`0.01`) or a fraction (`1/100`).
pub fn parse_epsilon(s: &str) -> Option<BigRational> {
    let s = s.trim();
    let v = if let Some((a, b)) = s.split_once('/') {
        let a: BigInt = a.trim().parse().ok()?;
        let b: BigInt = b.trim().parse().ok()?;
        if b.is_zero() {
            return None;
        }
        BigRational::new(a, b)
    } else if let Some((int, frac)) = s.split_once('.') {
        if !frac.chars().all(|c| c.is_ascii_digit()) {
            return None;
        }
        let int: BigInt = if int.is_empty() {
            BigInt::zero()
        } else {
            int.parse().ok()?
        };
        let scale = num_traits::pow(BigInt::from(10), frac.len());
        let frac_v: BigInt = if frac.is_empty() {
            BigInt::zero()
        } else {
            frac.parse().ok()?
        };
        BigRational::new(int * &scale + frac_v, scale)
    } else {
        BigRational::from_integer(s.parse().ok()?)
    };
    (v.is_positive() && v < BigRational::one()).then_some(v)
}

impl SystemSpec {
    /// Builds a system from polynomial texts (`F` lines, then optional `G`).
    pub fn from_polys(
        n: usize,
        field: RingDescriptor,
        epsilon: BigRational,
        f: &[&str],
        g: Option<&str>,
    ) -> Result<SystemSpec, ParseError> {
        let mut lines: Vec<(usize, &str)> =
            f.iter().enumerate().map(|(i, s)| (i + 1, *s)).collect();
        lines.push((f.len() + 1, g.unwrap_or("1")));
        let (slp, multipliers) = parse_polys(&lines, n)?;
        let spec = SystemSpec {
            n,
            field,
            epsilon,
            delta_bound: None,
            height: None,
            degrees: slp.degree_bounds(),
            slp,
            has_g: g.is_some(),
            multipliers,
        };
        spec.validate(0)?;
        Ok(spec)
    }

    fn validate(&self, line: usize) -> Result<(), ParseError> {
        let r = self.r();
        if self.n == 0 {
            return Err(ParseError::Header {
                line,
                message: "vars must be positive".into(),
            });
        }
        if r == 0 || r > self.n {
            return Err(ParseError::Header {
                line,
                message: format!("need 1 <= r <= n equations, got r = {r}, n = {}", self.n),
            });
        }
        Ok(())
    }

    /// Number of equations.
    pub fn r(&self) -> usize {
        self.slp.num_outputs() - 1
    }

    /// Index of `G` among the program outputs.
    pub fn g_index(&self) -> usize {
        self.r()
    }

    /// `d`: the largest degree bound among the `F_i` and `G`.
    pub fn max_degree(&self) -> usize {
        self.degrees.iter().copied().max().unwrap_or(0).max(1)
    }

    /// `delta_bound` if given, otherwise the Bezout number of the `F_i`.
    pub fn delta(&self) -> u64 {
        self.delta_bound.unwrap_or_else(|| {
            self.degrees[..self.r()]
                .iter()
                .fold(1u64, |acc, &d| acc.saturating_mul(d.max(1) as u64))
        })
    }

    /// Height bound `h` in bits: declared, or the largest constant.
    pub fn height_bits(&self) -> u64 {
        self.height
            .unwrap_or_else(|| self.slp.max_param_bits())
            .max(1)
    }

    pub fn parse(text: &str) -> Result<SystemSpec, ParseError> {
        let mut n: Option<usize> = None;
        let mut field: Option<RingDescriptor> = None;
        let mut epsilon = BigRational::new(BigInt::one(), BigInt::from(100));
        let mut delta_bound = None;
        let mut height = None;
        let mut degrees: Option<(usize, Vec<usize>)> = None;
        let mut f_lines: Vec<(usize, String)> = Vec::new();
        let mut g_line: Option<(usize, String)> = None;
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let body = raw.split('#').next().unwrap().trim();
            if body.is_empty() {
                continue;
            }
            let header = |message: String| ParseError::Header { line, message };
            let (key, value) = body
                .split_once(':')
                .ok_or_else(|| header(format!("expected `key: value`, got {body:?}")))?;
            let value = value.trim();
            match key.trim() {
                "vars" => {
                    n = Some(
                        value
                            .parse()
                            .map_err(|_| header(format!("bad vars {value:?}")))?,
                    )
                }
                "field" => {
                    field = Some(value.parse().map_err(|e| header(format!("{e}")))?);
                }
                "epsilon" => {
                    epsilon = parse_epsilon(value).ok_or_else(|| {
                        header(format!("epsilon must lie in (0, 1), got {value:?}"))
                    })?
                }
                "delta_bound" => {
                    delta_bound = Some(
                        value
                            .parse::<u64>()
                            .ok()
                            .filter(|&d| d >= 1)
                            .ok_or_else(|| header(format!("bad delta_bound {value:?}")))?,
                    )
                }
                "height" => {
                    height = Some(
                        value
                            .parse()
                            .map_err(|_| header(format!("bad height {value:?}")))?,
                    )
                }
                "degrees" => {
                    let ds: Result<Vec<usize>, _> = value
                        .split(',')
                        .map(|d| d.trim().parse::<usize>())
                        .collect();
                    degrees = Some((
                        line,
                        ds.map_err(|_| header(format!("bad degrees {value:?}")))?,
                    ));
                }
                "F" => f_lines.push((line, value.to_string())),
                "G" => {
                    if g_line.is_some() {
                        return Err(header("at most one G line".into()));
                    }
                    g_line = Some((line, value.to_string()));
                }
                other => return Err(header(format!("unknown key {other:?}"))),
            }
        }
        let n = n.ok_or(ParseError::Header {
            line: 0,
            message: "missing `vars`".into(),
        })?;
        let field = field.ok_or(ParseError::Header {
            line: 0,
            message: "missing `field`".into(),
        })?;
        let has_g = g_line.is_some();
        let g = g_line.unwrap_or((0, "1".into()));
        let mut lines: Vec<(usize, &str)> = f_lines.iter().map(|(l, s)| (*l, s.as_str())).collect();
        lines.push((g.0, g.1.as_str()));
        let (slp, multipliers) = parse_polys(&lines, n)?;
        let mut bounds = slp.degree_bounds();
        if let Some((line, ds)) = degrees {
            if ds.len() != f_lines.len() {
                return Err(ParseError::Header {
                    line,
                    message: format!("{} degrees for {} equations", ds.len(), f_lines.len()),
                });
            }
            bounds[..ds.len()].copy_from_slice(&ds);
        }
        let spec = SystemSpec {
            n,
            field,
            epsilon,
            delta_bound,
            height,
            slp,
            degrees: bounds,
            has_g,
            multipliers,
        };
        spec.validate(0)?;
        Ok(spec)
    }
}
