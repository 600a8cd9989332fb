fn main() {
    let cfg = defw::verify::VerifyConfig::default();
    for c in defw::verify::structure_suite(&cfg) {
        println!("[{}] {} - {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail);
    }
}
