//! Flag and file parsing: complex amplitudes in `re` / `re±imi` text form,
//! state presets, and the JSON state-spec file format.

use num_complex::Complex64;
use serde::Deserialize;
use wtangle::qcore::StateVector;
use wtangle::states::{make_ghz, make_w_n, make_w_prototype, WParams};

/// Amplitude lists may deviate from unit norm² by at most this much before
/// they are rejected; anything smaller is renormalized with a warning.
pub const RENORM_TOL: f64 = 1e-6;

/// Parses `re` or `re±imi`, e.g. `0.6`, `-0.25`, `0.6+0.2i`, `1e-3-0.5i`.
pub fn parse_complex(text: &str) -> Result<Complex64, String> {
    let trimmed = text.trim();
    if trimmed.is_empty() {
        return Err("empty amplitude".into());
    }
    if let Some(body) = trimmed.strip_suffix(['i', 'I']) {
        // Split the imaginary suffix at the last sign that is not part of an
        // exponent and not the leading sign.
        let bytes = body.as_bytes();
        let mut split = None;
        for pos in (1..bytes.len()).rev() {
            let c = bytes[pos] as char;
            if (c == '+' || c == '-') && !matches!(bytes[pos - 1] as char, 'e' | 'E') {
                split = Some(pos);
                break;
            }
        }
        let (re_text, im_text) = match split {
            Some(pos) => (&body[..pos], &body[pos..]),
            None => return Err(format!("`{trimmed}`: expected the form re±imi")),
        };
        let re: f64 = re_text
            .parse()
            .map_err(|_| format!("`{re_text}` is not a real number"))?;
        let im_text = match im_text {
            "+" => "1",
            "-" => "-1",
            other => other,
        };
        let im: f64 = im_text
            .parse()
            .map_err(|_| format!("`{im_text}` is not a real number"))?;
        Ok(Complex64::new(re, im))
    } else {
        let re: f64 = trimmed
            .parse()
            .map_err(|_| format!("`{trimmed}` is not a real number"))?;
        Ok(Complex64::new(re, 0.0))
    }
}

/// A state description: a named preset or a path to a JSON spec file.
pub enum StateSpec {
    Preset(Preset),
    File(std::path::PathBuf),
}

pub enum Preset {
    Ghz,
    WPrototype,
    Wn(WParams),
}

/// Accepts `ghz`, `w`, `w1` and `wn(n,gamma,delta)`; anything else is
/// treated as a file path.
pub fn parse_state_spec(text: &str) -> Result<StateSpec, String> {
    match text {
        "ghz" => return Ok(StateSpec::Preset(Preset::Ghz)),
        "w" => return Ok(StateSpec::Preset(Preset::WPrototype)),
        "w1" => {
            let p = WParams::new(1.0, 0.0, 0.0).expect("valid");
            return Ok(StateSpec::Preset(Preset::Wn(p)));
        }
        _ => {}
    }
    if let Some(rest) = text.strip_prefix("wn(") {
        let inner = rest
            .strip_suffix(')')
            .ok_or_else(|| format!("`{text}`: missing closing parenthesis"))?;
        let parts: Vec<&str> = inner.split(',').map(str::trim).collect();
        if parts.len() != 3 {
            return Err(format!("`{text}`: expected wn(n,gamma,delta)"));
        }
        let nums: Vec<f64> = parts
            .iter()
            .map(|p| p.parse().map_err(|_| format!("`{p}` is not a number")))
            .collect::<Result<_, String>>()?;
        let p = WParams::new(nums[0], nums[1], nums[2]).map_err(|e| e.to_string())?;
        return Ok(StateSpec::Preset(Preset::Wn(p)));
    }
    Ok(StateSpec::File(std::path::PathBuf::from(text)))
}

/// The JSON state-spec file: exactly one of `preset` or `amps`.
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateSpecFile {
    #[serde(default)]
    pub preset: Option<String>,
    #[serde(default)]
    pub amps: Option<Vec<[f64; 2]>>,
}

/// Loads a state from a spec, renormalizing amplitude lists that are off by
/// at most [`RENORM_TOL`] in norm² (with a warning on stderr).
pub fn load_state(spec: &StateSpec) -> Result<(StateVector, String), String> {
    match spec {
        StateSpec::Preset(p) => Ok(build_preset(p)),
        StateSpec::File(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
            let file: StateSpecFile = serde_json::from_str(&text)
                .map_err(|e| format!("{}: {e}", path.display()))?;
            match (file.preset, file.amps) {
                (Some(_), Some(_)) => {
                    Err(format!("{}: give either preset or amps, not both", path.display()))
                }
                (None, None) => Err(format!("{}: expected a preset or amps field", path.display())),
                (Some(name), None) => match parse_state_spec(&name)? {
                    StateSpec::Preset(p) => Ok(build_preset(&p)),
                    StateSpec::File(_) => Err(format!("`{name}` is not a preset name")),
                },
                (None, Some(amps)) => {
                    if amps.len() != 8 {
                        return Err(format!(
                            "amps must list 8 [re, im] pairs for a three-qubit state, got {}",
                            amps.len()
                        ));
                    }
                    let amps: Vec<Complex64> = amps
                        .iter()
                        .map(|&[re, im]| Complex64::new(re, im))
                        .collect();
                    let state = normalized_state(amps)?;
                    Ok((state, format!("file:{}", path.display())))
                }
            }
        }
    }
}

fn build_preset(p: &Preset) -> (StateVector, String) {
    match p {
        Preset::Ghz => (make_ghz(), "ghz".into()),
        Preset::WPrototype => (make_w_prototype(), "w".into()),
        Preset::Wn(params) => (
            make_w_n(params),
            format!("wn(n={}, gamma={}, delta={})", params.n, params.gamma, params.delta),
        ),
    }
}

/// Validates near-unit norm, renormalizes (warning beyond 1e-12 deviation),
/// rejects beyond [`RENORM_TOL`].
pub fn normalized_state(amps: Vec<Complex64>) -> Result<StateVector, String> {
    let num_qubits = amps.len().trailing_zeros() as usize;
    let norm_sqr: f64 = amps.iter().map(|z| z.norm_sqr()).sum();
    let deviation = (norm_sqr - 1.0).abs();
    if deviation > RENORM_TOL {
        return Err(format!(
            "amplitudes are not normalizable: norm² deviates from 1 by {deviation:.3e} \
             (limit {RENORM_TOL:.0e})"
        ));
    }
    if deviation > 1e-12 {
        eprintln!("warning: renormalizing input (norm² off by {deviation:.3e})");
    }
    StateVector::from_unnormalized(num_qubits, amps).map_err(|e| e.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_real_and_complex_forms() {
        assert_eq!(parse_complex("0.6").unwrap(), Complex64::new(0.6, 0.0));
        assert_eq!(parse_complex("-0.25").unwrap(), Complex64::new(-0.25, 0.0));
        assert_eq!(
            parse_complex("0.6+0.2i").unwrap(),
            Complex64::new(0.6, 0.2)
        );
        assert_eq!(
            parse_complex("0.6-0.2i").unwrap(),
            Complex64::new(0.6, -0.2)
        );
        assert_eq!(
            parse_complex("1e-3-5e-1i").unwrap(),
            Complex64::new(1e-3, -0.5)
        );
        assert!(parse_complex("abc").is_err());
        assert!(parse_complex("1+i+i").is_err());
    }

    #[test]
    fn preset_grammar() {
        assert!(matches!(
            parse_state_spec("ghz").unwrap(),
            StateSpec::Preset(Preset::Ghz)
        ));
        assert!(matches!(
            parse_state_spec("w").unwrap(),
            StateSpec::Preset(Preset::WPrototype)
        ));
        match parse_state_spec("wn(2.5, 0.1, 0.2)").unwrap() {
            StateSpec::Preset(Preset::Wn(p)) => {
                assert_eq!(p.n, 2.5);
                assert_eq!(p.gamma, 0.1);
            }
            _ => panic!("expected a wn preset"),
        }
        assert!(parse_state_spec("wn(1,2)").is_err());
        assert!(parse_state_spec("wn(-1,0,0)").is_err());
        assert!(matches!(
            parse_state_spec("./state.json").unwrap(),
            StateSpec::File(_)
        ));
    }

    #[test]
    fn rejects_badly_scaled_amplitudes() {
        let amps = vec![Complex64::new(0.5, 0.0); 8];
        assert!(normalized_state(amps).is_err());
    }
}
