use num_rational::BigRational;
use tilearith::freegrp::FGSet;
use tilearith::zarith::{normalize_set, ZError, ZSet};

use crate::output::CliError;

pub fn integers(s: &str) -> Result<Vec<i64>, CliError> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<i64>()
                .map_err(|_| CliError::Parse(format!("not an integer: {t:?}")))
        })
        .collect()
}

pub fn zset(s: &str) -> Result<ZSet, CliError> {
    let raw = integers(s)?;
    normalize_set(&raw).map_err(|e| match e {
        ZError::Empty | ZError::DuplicateElements(_) => CliError::Parse(e.to_string()),
        other => CliError::precondition("InvalidSet", other),
    })
}

pub fn rationals(s: &str) -> Result<Vec<BigRational>, CliError> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<BigRational>()
                .map_err(|_| CliError::Parse(format!("not a rational: {t:?}")))
        })
        .collect()
}

/// `p:d` pairs separated by commas.
pub fn pairs(s: &str) -> Result<Vec<(u64, u64)>, CliError> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            let bad = || CliError::Parse(format!("expected p:d, got {t:?}"));
            let (p, d) = t.split_once(':').ok_or_else(bad)?;
            Ok((p.trim().parse().map_err(|_| bad())?, d.trim().parse().map_err(|_| bad())?))
        })
        .collect()
}

#[derive(Debug, Clone, clap::Args)]
pub struct FgSetArgs {
    #[arg(long)]
    pub rank: usize,
    /// Comma-separated reduced words; uppercase letters are inverses, `1` is
    /// the identity.
    #[arg(long, group = "source")]
    pub set: Option<String>,
    #[arg(long, value_name = "R", group = "source")]
    pub ball: Option<usize>,
    #[arg(long, value_name = "R", group = "source")]
    pub sphere: Option<usize>,
    #[arg(long, value_name = "R", group = "source")]
    pub ball_minus_identity: Option<usize>,
}

impl FgSetArgs {
    pub fn build(&self) -> Result<Option<FGSet>, CliError> {
        let r = if let Some(s) = &self.set {
            FGSet::parse(self.rank, s)
        } else if let Some(r) = self.ball {
            FGSet::ball(self.rank, r)
        } else if let Some(r) = self.sphere {
            FGSet::sphere(self.rank, r)
        } else if let Some(r) = self.ball_minus_identity {
            FGSet::ball_minus_identity(self.rank, r)
        } else {
            return Ok(None);
        };
        r.map(Some).map_err(|e| CliError::Parse(e.to_string()))
    }

    pub fn require(&self) -> Result<FGSet, CliError> {
        self.build()?.ok_or_else(|| {
            CliError::Parse("one of --set, --ball, --sphere, --ball-minus-identity is required".into())
        })
    }
}
