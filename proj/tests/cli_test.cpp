// Copyright 2026 The qinst Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli/commands.hpp"

#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <sstream>
#include <sys/wait.h>

#include "qinst/io.hpp"

namespace qinst::cli {
namespace {

const std::string kFixtures = QINST_FIXTURE_DIR;

std::string fixture(const std::string& name) { return kFixtures + "/" + name + ".json"; }

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome run_args(std::vector<std::string> args) {
    args.insert(args.begin(), "qinst");
    std::vector<char*> argv;
    for (auto& a : args) argv.push_back(a.data());
    std::ostringstream out, err;
    int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

/// Runs the installed binary, capturing stdout.
Outcome run_binary(const std::string& args) {
    std::string cmd = std::string(QINST_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return {-1, "", ""};
    std::string out;
    std::array<char, 4096> buf;
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
    int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out, ""};
}

TEST(CmdCheck, Fixtures) {
    Report ok = cmd_check(fixture("luders_z"));
    EXPECT_TRUE(ok.pass());
    EXPECT_EQ(ok.exit_code, kPass);
    EXPECT_EQ(ok.payload.at("kind"), "instrument");

    Report bad = cmd_check(fixture("luders_z_perturbed"));
    EXPECT_FALSE(bad.pass());
    EXPECT_EQ(bad.exit_code, kSemanticFailure);
    bool normalization_failed = false;
    for (const auto& c : bad.checks) {
        if (c.name.find("normalization") != std::string::npos && !c.pass) normalization_failed = true;
    }
    EXPECT_TRUE(normalization_failed);

    EXPECT_EQ(cmd_check(fixture("malformed")).exit_code, kIoFailure);
    EXPECT_EQ(cmd_check(fixture("missing")).exit_code, kIoFailure);
}

TEST(CmdCheck, ReportsCpAndDecomposability) {
    Report t = cmd_check(fixture("transpose_trivial"));
    EXPECT_EQ(t.exit_code, kPass);
    EXPECT_EQ(t.payload.at("completely_positive"), false);
    Report z = cmd_check(fixture("luders_z"));
    EXPECT_EQ(z.payload.at("completely_positive"), true);
    EXPECT_EQ(z.payload.at("decomposable"), true);
}

TEST(CmdPovm, LudersZ) {
    Report r = cmd_povm(fixture("luders_z"));
    EXPECT_EQ(r.exit_code, kPass);
    Povm f = io::povm_from_json(r.payload.at("povm"));
    EXPECT_NEAR(f.effect(0)(0, 0).real(), 1.0, 1e-15);
    EXPECT_NEAR(f.effect(1)(1, 1).real(), 1.0, 1e-15);
}

TEST(CmdDilate, Fixtures) {
    auto out = std::filesystem::temp_directory_path() / "qinst_cli_model.json";
    Report ok = cmd_dilate(fixture("luders_z"), out.string());
    EXPECT_EQ(ok.exit_code, kPass);
    EXPECT_LT(ok.checks.front().max_deviation, 1e-8);
    IndirectModel m = io::model_from_json(io::read_file(out.string()));
    EXPECT_EQ(m.anc_dim(), 2u);
    std::filesystem::remove(out);

    Report non_cp = cmd_dilate(fixture("transpose_trivial"), "");
    EXPECT_EQ(non_cp.exit_code, kSemanticFailure);
    EXPECT_NE(non_cp.error.find("-1.0"), std::string::npos);

    EXPECT_EQ(cmd_dilate(fixture("luders_z"), "/nonexistent-dir/model.json").exit_code, kIoFailure);
}

TEST(CmdSimulate, Examples) {
    Report r = cmd_simulate({fixture("luders_z"), fixture("luders_x")}, fixture("state_zero"), 100000, 7);
    EXPECT_EQ(r.exit_code, kPass);
    for (const auto& t : r.payload.at("tallies")) EXPECT_LE(std::abs(t.at("z").get<double>()), 4.0);

    EXPECT_EQ(cmd_simulate({fixture("luders_z")}, fixture("state_zero"), 0, 7).exit_code, kSemanticFailure);

    Report single = cmd_simulate({fixture("luders_x")}, fixture("state_zero"), 100, 1);
    EXPECT_NEAR(single.payload.at("joint")[0].at("probability").get<double>(), 0.5, 1e-15);
}

TEST(CmdJoint, ZThenX) {
    Report r = cmd_joint({fixture("luders_z"), fixture("luders_x")}, fixture("state_zero"));
    EXPECT_EQ(r.exit_code, kPass);
    EXPECT_NEAR(r.payload.at("joint")[0].at("probability").get<double>(), 0.5, 1e-15);
    EXPECT_NEAR(r.payload.at("joint")[3].at("probability").get<double>(), 0.0, 1e-15);
}

TEST(CmdMlpd, Examples) {
    Report r = cmd_mlpd({fixture("luders_z"), fixture("luders_x")}, 20, 3);
    EXPECT_EQ(r.exit_code, kPass);
    EXPECT_EQ(r.payload.at("verdict"), "affine");
    EXPECT_EQ(cmd_mlpd({fixture("luders_z")}, 0, 3).exit_code, kSemanticFailure);
}

TEST(Run, ArgumentErrorsAndDeterminism) {
    EXPECT_EQ(run_args({"check"}).code, kIoFailure);
    EXPECT_EQ(run_args({"bogus"}).code, kIoFailure);
    Outcome a = run_args({"mlpd", fixture("luders_z"), "--trials", "10", "--seed", "5"});
    Outcome b = run_args({"mlpd", fixture("luders_z"), "--trials", "10", "--seed", "5"});
    EXPECT_EQ(a.code, kPass);
    EXPECT_EQ(a.out, b.out);
    EXPECT_FALSE(a.err.empty());
}

TEST(Binary, ExitCodesAndByteIdenticalOutput) {
    EXPECT_EQ(run_binary("check " + fixture("luders_z")).code, 0);
    EXPECT_EQ(run_binary("check " + fixture("luders_z_perturbed")).code, 1);
    EXPECT_EQ(run_binary("check " + fixture("malformed")).code, 2);
    std::string sim = "simulate " + fixture("luders_z") + " " + fixture("luders_x") + " --state " +
                      fixture("state_zero") + " --shots 2000 --seed 11";
    Outcome a = run_binary(sim), b = run_binary(sim);
    EXPECT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);
    EXPECT_NO_THROW(io::Json::parse(a.out));
}

}  // namespace
}  // namespace qinst::cli
