//! Short textual names for classical check matrices, as accepted by
//! `--code`, `--left-code` and `--right-code`:
//!
//! | spec                        | matrix                               |
//! |-----------------------------|--------------------------------------|
//! | `repetition:N`              | `(N−1)×N` repetition checks          |
//! | `hamming:R`                 | `R×(2^R−1)` Hamming checks           |
//! | `cycle:M`                   | incidence of the `M`-cycle           |
//! | `regular:N,T,DELTA[,SEED]`  | configuration-model LDPC matrix      |

use std::fmt;
use std::str::FromStr;

use qhgp_core::constructions::{build_classical, ClassicalKind};
use qhgp_core::BinaryMatrix;

use crate::error::{CliError, CliResult};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CodeSpec {
    Repetition(usize),
    Hamming(usize),
    Cycle(usize),
    Regular {
        n: usize,
        t: usize,
        delta: usize,
        seed: Option<u64>,
    },
}

impl CodeSpec {
    /// Fills in a missing seed.
    pub fn with_default_seed(self, default: u64) -> Self {
        match self {
            CodeSpec::Regular {
                n,
                t,
                delta,
                seed: None,
            } => CodeSpec::Regular {
                n,
                t,
                delta,
                seed: Some(default),
            },
            other => other,
        }
    }

    pub fn seed(&self) -> Option<u64> {
        match self {
            CodeSpec::Regular { seed, .. } => *seed,
            _ => None,
        }
    }

    pub fn build(&self) -> CliResult<BinaryMatrix> {
        let kind = match *self {
            CodeSpec::Repetition(n) => ClassicalKind::Repetition(n),
            CodeSpec::Hamming(r) => ClassicalKind::Hamming(r),
            CodeSpec::Cycle(m) => ClassicalKind::CycleGraph(m),
            CodeSpec::Regular { n, t, delta, seed } => ClassicalKind::RandomRegular {
                n,
                t,
                delta,
                seed: seed.unwrap_or(0),
            },
        };
        build_classical(&kind.into()).map_err(|e| CliError::Usage(format!("code spec {self}: {e}")))
    }
}

impl fmt::Display for CodeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CodeSpec::Repetition(n) => write!(f, "repetition:{n}"),
            CodeSpec::Hamming(r) => write!(f, "hamming:{r}"),
            CodeSpec::Cycle(m) => write!(f, "cycle:{m}"),
            CodeSpec::Regular { n, t, delta, seed } => {
                write!(f, "regular:{n},{t},{delta}")?;
                if let Some(s) = seed {
                    write!(f, ",{s}")?;
                }
                Ok(())
            }
        }
    }
}

impl FromStr for CodeSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (name, args) = s
            .split_once(':')
            .ok_or_else(|| format!("expected NAME:ARGS, got {s:?}"))?;
        let nums = args
            .split(',')
            .map(|a| {
                a.trim()
                    .parse::<u64>()
                    .map_err(|_| format!("invalid number {a:?} in {s:?}"))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let one = |nums: &[u64]| match nums {
            [x] => Ok(*x as usize),
            _ => Err(format!("{name} takes exactly one argument")),
        };
        match name {
            "repetition" => Ok(CodeSpec::Repetition(one(&nums)?)),
            "hamming" => Ok(CodeSpec::Hamming(one(&nums)?)),
            "cycle" => Ok(CodeSpec::Cycle(one(&nums)?)),
            "regular" => match nums[..] {
                [n, t, delta] => Ok(CodeSpec::Regular {
                    n: n as usize,
                    t: t as usize,
                    delta: delta as usize,
                    seed: None,
                }),
                [n, t, delta, seed] => Ok(CodeSpec::Regular {
                    n: n as usize,
                    t: t as usize,
                    delta: delta as usize,
                    seed: Some(seed),
                }),
                _ => Err("regular takes N,T,DELTA[,SEED]".into()),
            },
            _ => Err(format!("unknown code family {name:?}")),
        }
    }
}
