#include <random>
#include <sstream>

#include "doctest.h"
#include "tilesim/machine_model.hpp"

using namespace tilesim;

TEST_CASE("byte_per_flop matches the known device values") {
    const auto& specs = builtin_specs();
    const auto& rtx = find_spec(specs, "RTX 2060 SUPER");
    CHECK(byte_per_flop(rtx, Precision::Fp64) == doctest::Approx(2.0).epsilon(1e-3));

    const auto& a100 = find_spec(specs, "A100");
    CHECK(byte_per_flop(a100, Precision::Fp32) ==
          doctest::Approx(1555.0 / 19490.0).epsilon(1e-9));

    GpuSpec synthetic{"synthetic", "2020 Q1", "X", GpuGrade::Tesla,
                      500.0,  0.5,      0.25, 10,  100, 100, 8};
    // mem_bw (GB/s) numerically equal to peak (GFLOP/s)
    CHECK(byte_per_flop(synthetic, Precision::Fp32) == doctest::Approx(1.0));
}

TEST_CASE("compute_density matches Table-1 arithmetic") {
    const auto& specs = builtin_specs();
    const auto& a100 = find_spec(specs, "A100");
    CHECK(compute_density(a100, Precision::Fp32) ==
          doctest::Approx(19490.0 / 826.0).epsilon(1e-9));

    // P100 has slightly higher fp32 density than V100.
    const auto& p100 = find_spec(specs, "P100");
    const auto& v100 = find_spec(specs, "V100");
    double dp = compute_density(p100, Precision::Fp32);
    double dv = compute_density(v100, Precision::Fp32);
    CHECK(dp == doctest::Approx(17.39).epsilon(1e-3));
    CHECK(dv == doctest::Approx(17.34).epsilon(1e-3));
    CHECK(dp > dv);

    GpuSpec synthetic{"synthetic", "2020 Q1", "X", GpuGrade::Tesla,
                      500.0,  0.1,      0.05, 10,  100, 100, 8};
    // peak (GFLOP/s) numerically equal to die area (mm^2)
    CHECK(compute_density(synthetic, Precision::Fp32) == doctest::Approx(1.0));
}

TEST_CASE("expected_speedup examples") {
    const auto& specs = builtin_specs();
    auto s = expected_speedup(find_spec(specs, "V100"), find_spec(specs, "A100"),
                              Precision::Fp32);
    CHECK(s.flop_ratio == doctest::Approx(1.38).epsilon(0.005));
    CHECK(s.bw_ratio == doctest::Approx(1.73).epsilon(0.005));
    CHECK(s.t_speedup == doctest::Approx(1.38).epsilon(0.005));

    auto id = expected_speedup(find_spec(specs, "V100"), find_spec(specs, "V100"),
                               Precision::Fp64);
    CHECK(id.flop_ratio == 1.0);
    CHECK(id.bw_ratio == 1.0);
    CHECK(id.t_speedup == 1.0);

    auto kp = expected_speedup(find_spec(specs, "K80"), find_spec(specs, "P100"),
                               Precision::Fp32);
    CHECK(kp.flop_ratio == doctest::Approx(10.61 / 4.113).epsilon(1e-9));
    CHECK(kp.bw_ratio == doctest::Approx(732.2 / 240.6).epsilon(1e-9));
    CHECK(kp.t_speedup == doctest::Approx(2.58).epsilon(0.005));
}

TEST_CASE("scale consistency of the derived metrics") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> dist(0.1, 10.0);
    for (int i = 0; i < 200; ++i) {
        GpuSpec s{"s", "2020 Q1", "X", GpuGrade::Tesla, dist(rng), dist(rng),
                  0.0,  0,        0,   0,               0};
        s.peak_fp64_tflops = s.peak_fp32_tflops / 2.0;
        s.sm_count = 10;
        s.tdp_w = 100;
        s.die_area_mm2 = dist(rng) * 100;
        s.mem_capacity_gb = 8;
        double c = dist(rng);
        GpuSpec scaled = s;
        scaled.mem_bw_gbs *= c;
        scaled.peak_fp32_tflops *= c;
        scaled.peak_fp64_tflops *= c;
        CHECK(byte_per_flop(scaled, Precision::Fp32) ==
              doctest::Approx(byte_per_flop(s, Precision::Fp32)).epsilon(1e-12));

        GpuSpec scaled2 = s;
        scaled2.peak_fp32_tflops *= c;
        scaled2.die_area_mm2 *= c;
        CHECK(compute_density(scaled2, Precision::Fp32) ==
              doctest::Approx(compute_density(s, Precision::Fp32)).epsilon(1e-12));

        // bf_fp64 = 2 x bf_fp32 exactly when fp32 = 2 x fp64
        auto m = derived_metrics(s);
        CHECK(m.bf_fp64 == doctest::Approx(2.0 * m.bf_fp32).epsilon(1e-12));
    }
}

TEST_CASE("round-trip speedup product is at most 1") {
    const auto& specs = builtin_specs();
    for (const auto& a : specs)
        for (const auto& b : specs) {
            auto ab = expected_speedup(a, b, Precision::Fp32);
            auto ba = expected_speedup(b, a, Precision::Fp32);
            CHECK(ab.t_speedup * ba.t_speedup <= 1.0 + 1e-12);
        }
}

TEST_CASE("Tesla fp32 byte-per-flop band") {
    for (const auto& s : builtin_specs()) {
        if (s.grade != GpuGrade::Tesla) continue;
        double bf = byte_per_flop(s, Precision::Fp32);
        CHECK(bf >= 0.03);
        CHECK(bf <= 0.08);
    }
}

TEST_CASE("spec CSV load and validation") {
    std::ostringstream csv;
    write_specs_csv(csv, builtin_specs());
    std::istringstream in(csv.str());
    auto loaded = load_specs_csv(in);
    REQUIRE(loaded.size() == 8);
    CHECK(loaded[3].name == "A100");
    CHECK(loaded[3].mem_bw_gbs == doctest::Approx(1555.0));

    SUBCASE("bad header rejected") {
        std::istringstream bad("nope\n");
        CHECK_THROWS_AS(load_specs_csv(bad), std::runtime_error);
    }
    SUBCASE("fp64 above fp32 rejected with line number") {
        std::istringstream bad(
            "name,year,arch,grade,mem_bw_gbs,fp32_tflops,fp64_tflops,sms,tdp_w,die_mm2,"
            "mem_gb\nbogus,2020 Q1,X,tesla,100,1.0,2.0,10,100,100,8\n");
        CHECK_THROWS_WITH_AS(load_specs_csv(bad),
                             doctest::Contains("line 2"), std::runtime_error);
    }
    SUBCASE("negative field rejected") {
        std::istringstream bad(
            "name,year,arch,grade,mem_bw_gbs,fp32_tflops,fp64_tflops,sms,tdp_w,die_mm2,"
            "mem_gb\nbogus,2020 Q1,X,tesla,-5,2.0,1.0,10,100,100,8\n");
        CHECK_THROWS(load_specs_csv(bad));
    }
}
