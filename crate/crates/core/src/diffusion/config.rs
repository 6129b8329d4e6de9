use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Steps allowed when a configuration does not set a cap.
pub const DEFAULT_MAX_STEPS: usize = 100;

/// Activation probability used when an IC model is named without one.
pub const DEFAULT_IC_P: f64 = 0.1;

/// Diffusion model family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ModelKind {
    Ic,
    Lt,
    Si,
    Sir,
}

impl ModelKind {
    pub fn name(self) -> &'static str {
        match self {
            ModelKind::Ic => "ic",
            ModelKind::Lt => "lt",
            ModelKind::Si => "si",
            ModelKind::Sir => "sir",
        }
    }

    /// Progressive models never deactivate a node.
    pub fn is_progressive(self) -> bool {
        !matches!(self, ModelKind::Sir)
    }
}

impl FromStr for ModelKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "ic" => Ok(ModelKind::Ic),
            "lt" => Ok(ModelKind::Lt),
            "si" => Ok(ModelKind::Si),
            "sir" => Ok(ModelKind::Sir),
            other => Err(Error::config(format!("unknown diffusion model `{other}`"))),
        }
    }
}

/// Order of the two SIR sub-steps within one round.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum SirOrder {
    /// Nodes infected at the start of a round transmit, then may recover.
    #[default]
    InfectThenRecover,
    /// Recovery is drawn first; only nodes still infected transmit.
    RecoverThenInfect,
}

/// Model parameters. Only the fields relevant to `kind` are read.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DiffusionConfig {
    pub kind: ModelKind,
    /// IC activation probability per arc.
    pub p: f64,
    /// SI/SIR infection probability per contact per step.
    pub beta: f64,
    /// SIR recovery probability per step.
    pub gamma: f64,
    pub max_steps: usize,
    pub sir_order: SirOrder,
}

impl DiffusionConfig {
    fn base(kind: ModelKind) -> Self {
        DiffusionConfig {
            kind,
            p: 0.0,
            beta: 0.0,
            gamma: 0.0,
            max_steps: DEFAULT_MAX_STEPS,
            sir_order: SirOrder::default(),
        }
    }

    pub fn ic(p: f64) -> Self {
        DiffusionConfig { p, ..Self::base(ModelKind::Ic) }
    }

    pub fn lt() -> Self {
        Self::base(ModelKind::Lt)
    }

    pub fn si(beta: f64) -> Self {
        DiffusionConfig { beta, ..Self::base(ModelKind::Si) }
    }

    pub fn sir(beta: f64, gamma: f64) -> Self {
        DiffusionConfig {
            beta,
            gamma,
            ..Self::base(ModelKind::Sir)
        }
    }

    pub fn with_max_steps(mut self, max_steps: usize) -> Self {
        self.max_steps = max_steps;
        self
    }

    pub fn with_sir_order(mut self, order: SirOrder) -> Self {
        self.sir_order = order;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.max_steps == 0 {
            return Err(Error::config("max_steps must be at least 1"));
        }
        let probs: &[(&str, f64)] = match self.kind {
            ModelKind::Ic => &[("p", self.p)],
            ModelKind::Lt => &[],
            ModelKind::Si => &[("beta", self.beta)],
            ModelKind::Sir => &[("beta", self.beta), ("gamma", self.gamma)],
        };
        for &(name, value) in probs {
            if !(0.0..=1.0).contains(&value) {
                return Err(Error::config(format!("{name}={value} outside [0, 1]")));
            }
        }
        Ok(())
    }
}

impl fmt::Display for DiffusionConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            ModelKind::Ic => write!(f, "ic(p={},steps={})", self.p, self.max_steps),
            ModelKind::Lt => write!(f, "lt(steps={})", self.max_steps),
            ModelKind::Si => write!(f, "si(beta={},steps={})", self.beta, self.max_steps),
            ModelKind::Sir => {
                write!(f, "sir(beta={},gamma={},steps={}", self.beta, self.gamma, self.max_steps)?;
                if self.sir_order == SirOrder::RecoverThenInfect {
                    write!(f, ",recover_first")?;
                }
                write!(f, ")")
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(DiffusionConfig::ic(0.3).validate().is_ok());
        assert!(DiffusionConfig::ic(1.3).validate().is_err());
        assert!(DiffusionConfig::sir(0.1, -0.1).validate().is_err());
        assert!(DiffusionConfig::si(0.1).with_max_steps(0).validate().is_err());
        // p is irrelevant for SI
        let mut c = DiffusionConfig::si(0.2);
        c.p = 7.0;
        assert!(c.validate().is_ok());
    }

    #[test]
    fn kind_parsing() {
        assert_eq!("SIR".parse::<ModelKind>().unwrap(), ModelKind::Sir);
        assert!(matches!("seir".parse::<ModelKind>(), Err(Error::Config(_))));
    }

    #[test]
    fn labels() {
        assert_eq!(DiffusionConfig::si(0.1).with_max_steps(10).to_string(), "si(beta=0.1,steps=10)");
        assert_eq!(DiffusionConfig::ic(0.3).to_string(), "ic(p=0.3,steps=100)");
    }
}
