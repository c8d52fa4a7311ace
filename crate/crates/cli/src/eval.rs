//! `eval`: one quantity at one point.

use clap::ValueEnum;
use zetascope::euler_maclaurin::{remainder, zeta_hat_reference, EulerMaclaurinConfig};
use zetascope::functional::{h_hat_exact, h_hat_n, h_n, small_g_2n, small_h_2n};
use zetascope::series::{xi_partial, zeta_hat_partial, zeta_partial};
use zetascope::ComplexValue;

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum What {
    #[value(name = "zeta_n")]
    ZetaN,
    #[value(name = "xi_n")]
    XiN,
    #[value(name = "zeta_hat_n")]
    ZetaHatN,
    #[value(name = "zeta_hat")]
    ZetaHat,
    #[value(name = "H_hat")]
    HHat,
    #[value(name = "H_hat_n")]
    HHatN,
    #[value(name = "H_n")]
    HN,
    #[value(name = "h_2n")]
    SmallH2n,
    #[value(name = "g_2n")]
    SmallG2n,
    #[value(name = "R_n")]
    Rn,
}

impl What {
    pub fn depends_on_n(self) -> bool {
        !matches!(self, What::ZetaHat | What::HHat)
    }
}

pub struct EvalOutput {
    pub value: ComplexValue,
    pub n: Option<u64>,
    pub bound: Option<f64>,
}

pub fn parse_complex(s: &str) -> Result<ComplexValue, CliError> {
    let cleaned: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    cleaned.parse::<ComplexValue>().map_err(|_| {
        CliError::Usage(format!(
            "cannot parse complex number '{s}', expected RE+IMi"
        ))
    })
}

/// Evaluate `what` at `z`; n defaults to the reference cut-off for `z`.
pub fn evaluate(
    what: What,
    z: ComplexValue,
    n: Option<u64>,
    cfg: &EulerMaclaurinConfig,
) -> Result<EvalOutput, CliError> {
    let n = what
        .depends_on_n()
        .then(|| n.unwrap_or_else(|| cfg.reference_n(z)));
    let nn = n.unwrap_or(0);
    let mut bound = None;
    let value = match what {
        What::ZetaN => zeta_partial(z, nn)?,
        What::XiN => xi_partial(z, nn)?,
        What::ZetaHatN => zeta_hat_partial(z, nn)?,
        What::ZetaHat => zeta_hat_reference(z, cfg)?,
        What::HHat => h_hat_exact(z)?,
        What::HHatN => h_hat_n(z, nn)?,
        What::HN => h_n(z, nn)?,
        What::SmallH2n => small_h_2n(z, nn)?,
        What::SmallG2n => small_g_2n(z, nn)?,
        What::Rn => {
            let r = remainder(z, nn, cfg)?;
            bound = Some(r.bound);
            r.value
        }
    };
    Ok(EvalOutput { value, n, bound })
}

/// Fixed 15 decimals in the ordinary range, 15 significant digits otherwise.
pub fn format_real(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let a = x.abs();
    if (1e-3..1e15).contains(&a) {
        format!("{x:.15}")
    } else {
        format!("{x:.14e}")
    }
}

pub fn format_complex(z: ComplexValue) -> String {
    match (z.re == 0.0, z.im == 0.0) {
        (_, true) => format_real(z.re),
        (true, false) => format!("{}i", format_real(z.im)),
        (false, false) => {
            let sign = if z.im < 0.0 { '-' } else { '+' };
            format!("{}{sign}{}i", format_real(z.re), format_real(z.im.abs()))
        }
    }
}
