use chsh_core::bound::certify;
use chsh_core::entanglement::eof;
use chsh_core::nonlocality::nonlocality;
use chsh_core::qmat::{Tolerances, Vector3};
use chsh_core::states::DensityMatrix;
use serde::Serialize;

/// Measurement directions of the optimal CHSH setting.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SettingRecord {
    pub a: Vector3,
    pub a_prime: Vector3,
    pub b: Vector3,
    pub b_prime: Vector3,
    pub mix_angle: f64,
}

/// Everything `analyze` reports about one state.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AnalysisRecord {
    pub id: String,
    pub concurrence: f64,
    pub eof: f64,
    pub nonlocality: f64,
    pub bound: f64,
    pub slack: f64,
    pub member: bool,
    /// `None` when the structural test is indeterminate.
    pub structural_member: Option<bool>,
    pub lambda1: f64,
    pub lambda2: f64,
    pub zero_correlation: bool,
    pub setting: SettingRecord,
}

pub const CSV_HEADER: &str = "id,C,eof,N,bound,slack";

/// Six decimals, without a sign on values that round to zero.
pub fn fixed6(x: f64) -> String {
    let s = format!("{x:.6}");
    if s == "-0.000000" {
        "0.000000".to_string()
    } else {
        s
    }
}

fn vector6(v: &Vector3) -> String {
    format!("({}, {}, {})", fixed6(v[0]), fixed6(v[1]), fixed6(v[2]))
}

impl AnalysisRecord {
    pub fn compute(id: impl Into<String>, rho: &DensityMatrix, tol: &Tolerances) -> chsh_core::Result<Self> {
        let q = certify(rho, tol)?;
        let n = nonlocality(rho, tol);
        let s = n.setting;
        Ok(Self {
            id: id.into(),
            concurrence: q.concurrence,
            eof: eof(q.concurrence)?,
            nonlocality: q.nonlocality,
            bound: q.bound,
            slack: q.slack,
            member: q.operational_member,
            structural_member: q.structural_member,
            lambda1: n.lambda1,
            lambda2: n.lambda2,
            zero_correlation: n.zero_correlation,
            setting: SettingRecord { a: s.a, a_prime: s.a_prime, b: s.b, b_prime: s.b_prime, mix_angle: s.mix_angle },
        })
    }

    /// `id,C,eof,N,bound,slack` with 17 significant digits.
    pub fn csv_row(&self) -> String {
        format!(
            "{},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e}",
            self.id, self.concurrence, self.eof, self.nonlocality, self.bound, self.slack
        )
    }

    pub fn human(&self) -> String {
        let structural = match self.structural_member {
            Some(true) => "true",
            Some(false) => "false",
            None => "indeterminate",
        };
        let mut lines = vec![
            format!("state={}", self.id),
            format!("C={}", fixed6(self.concurrence)),
            format!("EoF={}", fixed6(self.eof)),
            format!("N={}", fixed6(self.nonlocality)),
            format!("bound={}", fixed6(self.bound)),
            format!("slack={}", fixed6(self.slack)),
            format!("member={}", self.member),
            format!("structural={structural}"),
            format!("lambda1={}", fixed6(self.lambda1)),
            format!("lambda2={}", fixed6(self.lambda2)),
            format!("a={}", vector6(&self.setting.a)),
            format!("a'={}", vector6(&self.setting.a_prime)),
            format!("b={}", vector6(&self.setting.b)),
            format!("b'={}", vector6(&self.setting.b_prime)),
        ];
        if self.zero_correlation {
            lines.push("note=correlation matrix vanishes; every setting gives 0".to_string());
        }
        lines.join("\n") + "\n"
    }

    pub fn json(&self) -> String {
        serde_json::to_string_pretty(self).unwrap_or_else(|e| unreachable!("record serialization cannot fail: {e}"))
    }
}
