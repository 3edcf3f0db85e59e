#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "tenstab/jobspec.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Exact computations with stabilized tensor products of finitely "
                 "presented modules over Z and Z/m"};
    std::string job_path;
    std::string emit = "text";
    long seed = -1;
    long horizon = -1;
    long truncation = -1;
    app.add_option("--job", job_path, "job description file ('-' or empty reads stdin)");
    app.add_option("--seed", seed, "override the job's random seed");
    app.add_option("--horizon", horizon, "override the job's horizon");
    app.add_option("--emit", emit, "output rendering: text | machine")
        ->check(CLI::IsMember({"text", "machine"}));
    app.add_option("--truncation", truncation,
                   "accepted for compatibility; all arithmetic is exact, so this has no effect");
    CLI11_PARSE(app, argc, argv);

    try {
        std::string text;
        if (job_path.empty() || job_path == "-") {
            std::ostringstream ss;
            ss << std::cin.rdbuf();
            text = ss.str();
        } else {
            std::ifstream in(job_path);
            if (!in) {
                std::cerr << "cannot open job file: " << job_path << "\n";
                return 2;
            }
            std::ostringstream ss;
            ss << in.rdbuf();
            text = ss.str();
        }
        tenstab::JobSpec job = tenstab::parse_jobspec(text);
        if (seed >= 0) job.params["seed"] = seed;
        if (horizon >= 0) job.params["horizon"] = horizon;
        if (truncation >= 0) job.params["truncation"] = truncation;
        tenstab::Report rep = tenstab::run(job);
        std::cout << (emit == "machine" ? rep.machine : rep.human);
        return rep.ok ? 0 : 1;
    } catch (const tenstab::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
