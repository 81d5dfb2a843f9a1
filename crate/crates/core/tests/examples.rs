//! Runs every cargo example with its default arguments.

macro_rules! example {
    ($name:ident) => {
        mod $name {
            include!(concat!("../examples/", stringify!($name), ".rs"));
        }

        #[test]
        fn $name() {
            $name::run(&[]).unwrap();
        }
    };
}

example!(count_table);
example!(verify_oracle);
example!(reference_tables);
example!(kloosterman_sums);
example!(determinants);
example!(asymptotics);
example!(closed_forms);
example!(cyclotomic_arithmetic);

#[test]
fn examples_accept_arguments() {
    let args = |v: &[&str]| v.iter().map(|s| s.to_string()).collect::<Vec<_>>();
    count_table::run(&args(&["7", "2"])).unwrap();
    verify_oracle::run(&args(&["3", "5", "7"])).unwrap();
    kloosterman_sums::run(&args(&["2", "6"])).unwrap();
    assert!(count_table::run(&args(&["4", "2"])).is_err());
}
