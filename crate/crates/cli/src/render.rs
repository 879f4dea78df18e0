use alexander::alexcore::{JordanData, ModuleDecomposition};
use alexander::laurent::FactorKind;

/// One line per degree: `degree 0: (t - 1) sizes [1]`.
pub fn jordan_text(j: &JordanData, var: &str) -> String {
    j.degrees.iter().enumerate().map(|(i, m)| format!("degree {}: {}\n", i, decomposition_text(m, var))).collect()
}

pub fn decomposition_text(m: &ModuleDecomposition, var: &str) -> String {
    if m.is_zero() {
        return "0".to_string();
    }
    let mut parts = Vec::new();
    if m.free_rank > 0 {
        parts.push(format!("free rank {}", m.free_rank));
    }
    for (f, sizes) in &m.torsion {
        let note = if f.kind == FactorKind::Unverified { " [unverified factor]" } else { "" };
        parts.push(format!("({}) sizes {:?}{}", f.poly.to_string_in(var), sizes, note));
    }
    parts.join("; ")
}
