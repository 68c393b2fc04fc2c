macro_rules! example {
    ($module:ident, $file:literal) => {
        mod $module {
            include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/", $file));
        }
    };
}

example!(ring_arithmetic, "ring_arithmetic.rs");
example!(multiplication_table, "multiplication_table.rs");
example!(array_code, "array_code.rs");
example!(network_coding, "network_coding.rs");
example!(file_sharding, "file_sharding.rs");
example!(throughput, "throughput.rs");

#[test]
fn ring_arithmetic_runs() {
    ring_arithmetic::run_example().expect("ring arithmetic example");
}

#[test]
fn multiplication_table_runs() {
    multiplication_table::run_example().expect("table example");
}

#[test]
fn array_code_runs() {
    array_code::run_example().expect("array code example");
}

#[test]
fn network_coding_runs() {
    network_coding::run_example().expect("network example");
}

#[test]
fn file_sharding_runs() {
    file_sharding::run_example().expect("file sharding example");
}

#[test]
fn throughput_runs() {
    throughput::run_with(1 << 16).expect("throughput example");
}
