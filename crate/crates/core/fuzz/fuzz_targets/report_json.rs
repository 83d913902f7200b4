#![no_main]

use libfuzzer_sys::fuzz_target;
use specseq::scenarios::{render_chart, ChartFormat, ChartRequest, ChartSs, Report, Slice};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(report) = Report::from_json(text) else { return };
    for (ss, page, slice) in [(ChartSs::Ls, 2, None), (ChartSs::Em, 2, None), (ChartSs::Tri, 1, Some(Slice::S(0)))] {
        for format in [ChartFormat::Ascii, ChartFormat::Tex] {
            let _ = render_chart(&report, &ChartRequest { ss, page, slice, format });
        }
    }
    let _ = Report::from_json(&report.to_json()).expect("serialized reports decode");
});
