#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

namespace fs = std::filesystem;

namespace {

int run(const std::string& args)
{
    const std::string cmd = std::string(POLARITON_CLI) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

fs::path scratch(const std::string& name)
{
    const auto dir = fs::temp_directory_path() / ("polariton_cli_" + name);
    fs::remove_all(dir);
    return dir;
}

std::vector<std::vector<std::string>> read_csv(const fs::path& p)
{
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(slurp(p));
    for (std::string line; std::getline(in, line);) {
        std::vector<std::string> cells;
        std::istringstream ls(line);
        for (std::string cell; std::getline(ls, cell, ',');)
            cells.push_back(cell);
        rows.push_back(cells);
    }
    return rows;
}

const std::string quick = "--set grid.n_tau=2001 --set grid.tau_max=40 --set solver.d_zeta=5e-3 -q";

} // namespace

TEST_CASE("exit codes")
{
    const auto out = scratch("codes");
    CHECK(run("no-such-scenario --out " + out.string()) == 1);
    CHECK(run("") == 1);
    CHECK(run("ringing --bogus-flag") == 1);
    CHECK(run("ringing --set medium.gamma_perp_t=-1 --out " + out.string()) == 2);
    CHECK(run("ringing --set medium.nothing=1 --out " + out.string()) == 2);
    CHECK(run("ringing -c /nonexistent.cfg --out " + out.string()) == 2);
    CHECK(run("ringing --set grid.zeta_end=200 --set solver.d_zeta=50 --set grid.n_tau=2001 "
              "--set grid.tau_max=20 --set solver.convergence_check=0 -q --out " + out.string()) == 3);
    CHECK(run("dispersion -q --out " + out.string()) == 0);
}

TEST_CASE("ringing over zero length reproduces the input samples")
{
    const auto out = scratch("identity");
    REQUIRE(run("ringing --set grid.zeta_end=0 " + quick + " --out " + out.string()) == 0);
    const auto in = slurp(out / "ringing_input.csv");
    CHECK_FALSE(in.empty());
    CHECK(in == slurp(out / "ringing_output.csv"));
}

TEST_CASE("repeated runs produce byte-identical CSV files")
{
    const auto a = scratch("det_a"), b = scratch("det_b");
    const std::string args = "pump-probe --set grid.zeta_end=0.2 " + quick;
    REQUIRE(run(args + " --out " + a.string()) == 0);
    REQUIRE(run(args + " --out " + b.string()) == 0);
    int compared = 0;
    for (const auto& entry : fs::directory_iterator(a)) {
        if (entry.path().extension() != ".csv")
            continue;
        CHECK(slurp(entry.path()) == slurp(b / entry.path().filename()));
        ++compared;
    }
    CHECK(compared >= 2);
}

TEST_CASE("CSV layout and manifest contents")
{
    const auto out = scratch("layout");
    const auto cfg = fs::temp_directory_path() / "polariton_cli_layout.cfg";
    std::ofstream(cfg) << "pump.area_pi_units = 0.4\ngrid.zeta_end = 0.2\n";
    REQUIRE(run("pump-probe -c " + cfg.string() + " " + quick + " --out " + out.string()) == 0);

    const auto spectrum = read_csv(out / "spectrum_pump_probe.csv");
    REQUIRE(spectrum.size() > 10);
    CHECK(spectrum[0] == std::vector<std::string>{"delta_over_omega_c", "T", "masked"});
    for (std::size_t r = 1; r < spectrum.size(); ++r) {
        REQUIRE(spectrum[r].size() == 3);
        CHECK((spectrum[r][2] == "0" || spectrum[r][2] == "1"));
    }
    const auto field = read_csv(out / "probe_out.csv");
    CHECK(field[0] == std::vector<std::string>{"tau", "re_omega", "im_omega", "abs_omega"});
    CHECK(field.size() == 2002);

    const auto manifest = slurp(out / "manifest.txt");
    CHECK(manifest.find("scenario = pump-probe") != std::string::npos);
    CHECK(manifest.find("param.pump.area_pi_units = 0.4 (config)") != std::string::npos);
    CHECK(manifest.find("param.grid.n_tau = 2001 (override)") != std::string::npos);
    CHECK(manifest.find("convergence.0 = ") != std::string::npos);
    std::istringstream lines(manifest);
    for (std::string line; std::getline(lines, line);) {
        CHECK(line.find(" = ") != std::string::npos);
        if (line.rfind("output.", 0) == 0) {
            const auto file = out / line.substr(line.find(" = ") + 3);
            CHECK(fs::file_size(file) > 0);
        }
    }
}

TEST_CASE("cavity scenarios write two-column spectra")
{
    const auto out = scratch("cavity");
    REQUIRE(run("fp-spectrum -q --out " + out.string()) == 0);
    const auto t = read_csv(out / "fp_transmission.csv");
    CHECK(t[0] == std::vector<std::string>{"delta_over_omega_c", "T"});
    CHECK(t.size() == 4002);
    REQUIRE(run("cavity-modes -q --out " + out.string()) == 0);
    CHECK(fs::file_size(out / "splitting_vs_density.csv") > 0);
}

TEST_CASE("sweep results are listed in parameter order")
{
    const auto out = scratch("sweep");
    REQUIRE(run("sweep --set sweep.scenario=ringing --set \"sweep.values=1, 0.25, 0.5\" "
                "--set sweep.workers=3 --set solver.convergence_check=0 " + quick + " --out " + out.string()) == 0);
    const auto manifest = slurp(out / "manifest.txt");
    const auto a = manifest.find("result.point00_grid.zeta_end = 0.25");
    const auto b = manifest.find("result.point01_grid.zeta_end = 0.5");
    const auto c = manifest.find("result.point02_grid.zeta_end = 1");
    REQUIRE(a != std::string::npos);
    REQUIRE(b != std::string::npos);
    REQUIRE(c != std::string::npos);
    CHECK(a < b);
    CHECK(b < c);
    CHECK(fs::exists(out / "point02_ringing_output.csv"));
}
