//! Partition input for `check-partition`: either a JSON report (its
//! `witness` field is used) or one block per line, indices separated by
//! whitespace or commas.

use crate::report::ReportRecord;

pub fn parse_blocks(text: &str) -> Result<Vec<Vec<usize>>, String> {
    let trimmed = text.trim_start();
    if trimmed.starts_with('{') {
        let rec = ReportRecord::from_json(trimmed).map_err(|e| format!("bad report: {e}"))?;
        return rec.witness.ok_or_else(|| "report has no witness partition".to_string());
    }
    if trimmed.starts_with('[') {
        return serde_json::from_str(trimmed).map_err(|e| format!("bad block list: {e}"));
    }
    let mut blocks = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let block = line
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|s| !s.is_empty())
            .map(|s| s.parse::<usize>().map_err(|e| format!("line {}: bad index `{s}`: {e}", i + 1)))
            .collect::<Result<Vec<_>, _>>()?;
        blocks.push(block);
    }
    Ok(blocks)
}
