//! The flat coordinate u = h/g for the cubic and quartic families.

use lg_moonshine::emit::short_value;
use lg_moonshine::{flat_ratio, g_series, h_series, CurveKind};

fn main() -> lg_moonshine::Result<()> {
    for kind in [CurveKind::Cubic, CurveKind::Quartic] {
        println!("{kind}");
        let show = |name: &str, s: &lg_moonshine::TruncatedSeries| {
            let terms: Vec<String> = s.nonzero_terms().map(|(n, c)| format!("{} t^{n}", short_value(c))).collect();
            println!("  {name} = {} + O(t^{})", terms.join(" + ").replace("+ -", "- "), s.truncation() + 1);
        };
        show("g", &g_series(kind, 12));
        show("h", &h_series(kind, 12));
        show("h/g", &flat_ratio(kind, 12)?);
    }
    Ok(())
}
