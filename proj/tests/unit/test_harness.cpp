#include "sparsecast/error.hpp"
#include "sparsecast/harness.hpp"

#include "support.hpp"

#include <doctest.h>

#include <filesystem>
#include <sstream>

using namespace sparsecast;

namespace {

std::size_t line_count(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

}  // namespace

TEST_SUITE("harness") {
    TEST_CASE("csv: header only, line count, parse back") {
        std::ostringstream empty;
        write_csv(empty, {});
        CHECK(empty.str() == std::string(csv_header) + "\n");

        const std::vector<SweepRecord> recs{
            {"sparsecast", 5.0, 4.99871, 30.123456, 0.5, 131072, 17536, 0.0},
            {"softcast", 10.0, 10.00004, 35.0, 0.0, 75000, 10000, 1.23456},
        };
        std::ostringstream out;
        write_csv(out, recs);
        CHECK(line_count(out.str()) == 3);

        std::istringstream in(out.str());
        const auto back = read_csv(in);
        REQUIRE(back.size() == 2);
        CHECK(back[0].csnr_real_db == 4.9987);
        CHECK(back[0].psnr_mean_db == 30.1235);
        CHECK(back[1].seconds == 1.2346);
        CHECK(back[1].symbols == 75000);
        std::ostringstream again;
        write_csv(again, back);
        CHECK(again.str() == out.str());

        std::istringstream bad("codec,x\n");
        CHECK_THROWS_AS(read_csv(bad), Error);
    }

    TEST_CASE("csv handles infinite values") {
        const std::vector<SweepRecord> recs{{"sparsecast", noiseless_csnr_db, noiseless_csnr_db, psnr_infinite, 0.0, 1, 2, 0.0}};
        std::ostringstream out;
        write_csv(out, recs);
        CHECK(out.str().find("sparsecast,inf,inf,inf,") != std::string::npos);
        std::istringstream in(out.str());
        CHECK(read_csv(in) == recs);
    }

    TEST_CASE("single noiseless point equals the direct decode") {
        const Frame f = testing::smooth_frame(64, 64, 1);
        SweepSpec spec;
        spec.csnr_points = {noiseless_csnr_db};
        spec.trials = 1;
        spec.sparsecast.tau = 1.0;
        const auto recs = run_sweep(spec, f);
        REQUIRE(recs.size() == 1);
        const auto enc = encode(f, spec.sparsecast);
        CHECK(recs[0].psnr_mean_db == psnr(f, decode(enc.stream, enc.metadata, 0.0)));
        CHECK(recs[0].symbols == enc.stream.total_symbols());
        CHECK(recs[0].metadata_bits == enc.metadata.total_bits());
        CHECK(recs[0].psnr_std_db == 0.0);
    }

    TEST_CASE("sweeps are deterministic regardless of thread count") {
        const Frame f = testing::smooth_frame(64, 64, 2);
        SweepSpec spec;
        spec.csnr_points = {0.0, 10.0, 20.0};
        spec.trials = 3;
        spec.threads = 1;
        const auto a = run_sweep(spec, f);
        spec.threads = 4;
        const auto b = run_sweep(spec, f);
        CHECK(a == b);
        for (const auto& r : a) CHECK(std::abs(r.csnr_real_db - r.csnr_req_db) < 0.2);
        CHECK(a[0].psnr_mean_db < a[2].psnr_mean_db);

        spec.codec = CodecKind::softcast;
        spec.softcast = {32, 0.0};
        const auto s = run_sweep(spec, f);
        CHECK(s[0].codec == "softcast");
        CHECK(s[0].symbols == 1024 * 2);
    }

    TEST_CASE("spec validation") {
        const Frame f = testing::smooth_frame(64, 64, 3);
        SweepSpec spec;
        CHECK_THROWS_AS(run_sweep(spec, f), Error);
        spec.csnr_points = {5.0};
        spec.trials = 0;
        CHECK_THROWS_AS(run_sweep(spec, f), Error);
        CHECK(parse_codec("softcast") == CodecKind::softcast);
        CHECK_THROWS_AS(parse_codec("jpeg"), Error);
    }

    TEST_CASE("reference thresholds") {
        const auto t = reference_thresholds();
        REQUIRE(t.size() == 4);
        CHECK(t[0].constellation == "BPSK");
        CHECK(t[0].uncoded_db == 8.0);
        CHECK(*t[0].coded_1_2_db == 3.0);
        CHECK_FALSE(t[0].coded_2_3_db.has_value());
        CHECK(*t[0].coded_3_4_db == 5.0);
        CHECK(t[1].uncoded_db == 11.0);
        CHECK(*t[1].coded_1_2_db == 6.0);
        CHECK(*t[1].coded_3_4_db == 8.0);
        CHECK(t[2].uncoded_db == 18.0);
        CHECK(*t[2].coded_1_2_db == 11.0);
        CHECK(*t[2].coded_3_4_db == 15.0);
        CHECK(t[3].constellation == "64-QAM");
        CHECK(t[3].uncoded_db == 24.0);
        CHECK_FALSE(t[3].coded_1_2_db.has_value());
        CHECK(*t[3].coded_2_3_db == 19.0);
        CHECK(*t[3].coded_3_4_db == 21.0);

        CHECK_FALSE(best_digital_mode(2.9).has_value());
        CHECK(best_digital_mode(3.0)->label == "BPSK 1/2");
        CHECK(best_digital_mode(8.0)->label == "QPSK 3/4");
        CHECK(best_digital_mode(25.0)->label == "64-QAM uncoded");

        std::ostringstream out;
        const std::vector<SweepRecord> recs{{"sparsecast", 0.0, 0.0, 20.0, 0.0, 1, 1, 0.0},
                                            {"sparsecast", 20.0, 20.0, 40.0, 0.0, 1, 1, 0.0}};
        write_report(out, recs);
        CHECK(out.str().find(",,,\n") != std::string::npos);
        CHECK(out.str().find("16-QAM uncoded,18.0000,4.0000") != std::string::npos);
    }

    TEST_CASE("save_reconstruction: round trip, black, white") {
        const auto dir = std::filesystem::temp_directory_path();
        for (const Frame& f : {testing::random_frame(16, 16, 1), Frame(8, 8, 0.0), Frame(8, 8, 255.0)}) {
            const auto path = dir / "sparsecast_unit_recon.pgm";
            save_reconstruction(f, path);
            CHECK(load_frame(path, 1) == f);
            std::filesystem::remove(path);
        }
    }
}
