//! Bound reports as CSV rows (`bound,N,M,Zx,Zy,D,q,value,applicable`) and JSON.

use aflaz_core::bounds::BoundReport;

use crate::error::Result;

pub const BOUND_COLUMNS: [&str; 9] = [
    "bound",
    "N",
    "M",
    "Zx",
    "Zy",
    "D",
    "q",
    "value",
    "applicable",
];

pub fn bound_record(r: &BoundReport) -> [String; 9] {
    let p = &r.params;
    [
        r.name.as_str().to_string(),
        p.n.to_string(),
        p.m.to_string(),
        p.z_x.to_string(),
        p.z_y.to_string(),
        p.d.to_string(),
        r.q.map(|q| q.to_string()).unwrap_or_default(),
        r.value.to_string(),
        r.applicable.to_string(),
    ]
}

pub fn bounds_csv(reports: &[BoundReport]) -> Result<String> {
    let mut wtr = csv::Writer::from_writer(Vec::new());
    wtr.write_record(BOUND_COLUMNS)?;
    for r in reports {
        wtr.write_record(bound_record(r))?;
    }
    Ok(String::from_utf8(wtr.into_inner().map_err(|e| e.into_error())?).expect("ascii"))
}

pub fn bounds_json(reports: &[BoundReport]) -> Result<String> {
    Ok(serde_json::to_string_pretty(reports)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use aflaz_core::bounds::{benchmark_ye2022, BoundParams};

    #[test]
    fn csv_layout() {
        let r = benchmark_ye2022(&BoundParams::new(128, 6, 32, 8).unwrap()).unwrap();
        let csv = bounds_csv(std::slice::from_ref(&r)).unwrap();
        let mut lines = csv.lines();
        assert_eq!(
            lines.next().unwrap(),
            "bound,N,M,Zx,Zy,D,q,value,applicable"
        );
        assert_eq!(
            lines.next().unwrap(),
            format!("benchmark,128,6,32,8,0,,{},true", r.value)
        );
        let json = bounds_json(&[r]).unwrap();
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v[0]["name"], "Benchmark");
    }
}
