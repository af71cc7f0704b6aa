macro_rules! example_test {
    ($module:ident, $file:literal) => {
        mod $module {
            include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/", $file));
        }

        #[test]
        fn $module() {
            $module::run_example().expect(concat!($file, " should run"));
        }
    };
}

example_test!(charging_energetics, "charging_energetics.rs");
example_test!(bcs_pseudospin, "bcs_pseudospin.rs");
example_test!(normal_modes, "normal_modes.rs");
example_test!(phase_diagram, "phase_diagram.rs");
example_test!(finite_size_scaling, "finite_size_scaling.rs");
example_test!(circuit_to_dicke, "circuit_to_dicke.rs");
