// syfh command-line front end: key generation, basis precomputation,
// record ingestion (fresh encryption or basis synthesis), ciphertext
// verification, hybrid-game consistency checks, and throughput benchmarks.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "syfh/syfh.hpp"

namespace fs = std::filesystem;
using namespace syfh;

namespace {

u64 resolve_seed(std::optional<u64> flag_seed) {
    if (flag_seed) return *flag_seed;
    if (const char* env = std::getenv("SYFH_SEED")) return std::strtoull(env, nullptr, 10);
    return std::random_device{}();
}

struct KeyDir {
    ParamSet params;
    SecretKey sk;
    PublicKey pk;
    RelinKey rlk;
};

void require_same_keys(const ParamSet& a, const ParamSet& b, const std::string& what) {
    if (a.ring_degree != b.ring_degree || a.plain_modulus != b.plain_modulus ||
        a.q_chain != b.q_chain)
        throw KeyMismatch(what + " was produced under different parameters");
}

KeyDir load_keys(const std::string& dir) {
    KeyDir k;
    k.params = deserialize_params(read_file((fs::path(dir) / "params.syfh").string()));
    auto [ps_sk, sk] = deserialize_secret_key(read_file((fs::path(dir) / "secret_key.syfh").string()));
    auto [ps_pk, pk] = deserialize_public_key(read_file((fs::path(dir) / "public_key.syfh").string()));
    auto [ps_rk, rlk] = deserialize_relin_key(read_file((fs::path(dir) / "relin_key.syfh").string()));
    require_same_keys(k.params, ps_sk, "secret key");
    require_same_keys(k.params, ps_pk, "public key");
    require_same_keys(k.params, ps_rk, "relin key");
    k.sk = std::move(sk);
    k.pk = std::move(pk);
    k.rlk = std::move(rlk);
    return k;
}

std::pair<CiphertextBasis, ZeroMask> load_basis_dir(const std::string& dir, const ParamSet& expect,
                                                    const PublicKey& pk) {
    auto [ps_b, basis] = deserialize_basis(read_file((fs::path(dir) / "basis.syfh").string()));
    auto [ps_m, mask] = deserialize_zero_mask(read_file((fs::path(dir) / "zero_mask.syfh").string()));
    require_same_keys(expect, ps_b, "basis");
    require_same_keys(expect, ps_m, "zero mask");
    const u64 fp = key_fingerprint(expect, pk);
    if (basis.fingerprint != fp || mask.fingerprint != fp)
        throw FingerprintMismatch("basis/mask fingerprint does not match the loaded keys");
    return {std::move(basis), std::move(mask)};
}

std::vector<SlotVector> read_records(std::istream& in, u64 t) {
    std::vector<SlotVector> records;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line == "\r") continue;
        SlotVector rec = parse_record_line(line, lineno, t);
        if (!records.empty() && rec.size() != records.front().size())
            throw ParseError("line " + std::to_string(lineno) + ": expected " +
                             std::to_string(records.front().size()) + " fields");
        records.push_back(std::move(rec));
    }
    return records;
}

std::vector<std::size_t> parse_size_list(const std::string& csv) {
    std::vector<std::size_t> out;
    std::istringstream is(csv);
    std::string field;
    while (std::getline(is, field, ',')) out.push_back(std::stoull(field));
    return out;
}

std::string join_slots(const SlotVector& v) {
    std::ostringstream os;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) os << ',';
        os << v[i];
    }
    return os.str();
}

int cmd_keygen(const std::string& profile, std::uint32_t pool_size, const std::string& out_dir,
               std::optional<u64> seed) {
    ParamSet ps = make_params(profile);
    if (pool_size != 0) {
        ps.pool_size = pool_size;
        ps = make_params(ps);
    }
    const Context ctx(ps);
    Rng rng(resolve_seed(seed));
    auto [sk, pk, rlk] = keygen(ctx, rng);

    fs::create_directories(out_dir);
    write_file((fs::path(out_dir) / "params.syfh").string(), serialize_params(ps));
    write_file((fs::path(out_dir) / "secret_key.syfh").string(), serialize_secret_key(ps, sk));
    write_file((fs::path(out_dir) / "public_key.syfh").string(), serialize_public_key(ps, pk));
    write_file((fs::path(out_dir) / "relin_key.syfh").string(), serialize_relin_key(ps, rlk));

    std::cout << "profile: " << profile << "\nN: " << ps.ring_degree << "\nt: " << ps.plain_modulus
              << "\nchain:";
    for (u64 p : ps.q_chain) std::cout << ' ' << p;
    std::cout << "\nwrote 4 key files to " << out_dir << "\n";
    return 0;
}

int cmd_precompute(std::size_t d, const std::string& strategy, const std::string& key_dir,
                   const std::string& out_dir, std::optional<u64> seed) {
    const KeyDir keys = load_keys(key_dir);
    const Context ctx(keys.params);
    Rng rng(resolve_seed(seed));

    const MaskStrategy ms = strategy == "pool" ? MaskStrategy::pool : MaskStrategy::single;
    const auto before = counters::snapshot();
    auto [basis, mask] = precompute_basis_and_noise(ctx, d, keys.pk, ms, rng);
    const u64 enc_calls = (counters::snapshot() - before).encryptions;

    fs::create_directories(out_dir);
    write_file((fs::path(out_dir) / "basis.syfh").string(), serialize_basis(keys.params, basis));
    write_file((fs::path(out_dir) / "zero_mask.syfh").string(),
               serialize_zero_mask(keys.params, mask));

    std::cout << "d: " << d << "\nstrategy: " << strategy << "\nencryption calls: " << enc_calls
              << "\nwrote basis.syfh and zero_mask.syfh to " << out_dir << "\n";
    return 0;
}

int cmd_ingest(const std::string& input, const std::string& strategy, const std::string& key_dir,
               const std::string& basis_dir, const std::string& out_dir,
               std::optional<u64> seed) {
    const KeyDir keys = load_keys(key_dir);
    const Context ctx(keys.params);
    Rng rng(resolve_seed(seed));

    std::vector<SlotVector> records;
    if (input == "-") {
        records = read_records(std::cin, ctx.plain_modulus());
    } else {
        std::ifstream is(input);
        if (!is) throw Error("cannot open input: " + input);
        records = read_records(is, ctx.plain_modulus());
    }
    if (records.empty()) throw Error("no records in input");

    const IngestStrategy st = parse_strategy(strategy);
    CiphertextBasis basis;
    ZeroMask mask;
    if (st != IngestStrategy::fresh) {
        if (basis_dir.empty()) throw Error("--basis is required for synthesis strategies");
        std::tie(basis, mask) = load_basis_dir(basis_dir, keys.params, keys.pk);
        if (st == IngestStrategy::pool && mask.strategy != MaskStrategy::pool)
            throw Error("pool strategy requested but the stored mask is single");
        if (st == IngestStrategy::synth && mask.strategy != MaskStrategy::single)
            throw Error("synth strategy requested but the stored mask is a pool");
    }

    const IngestOutcome outcome =
        run_ingest(ctx, records, st, &keys.pk, &basis, &mask, out_dir, rng);
    std::cout << BenchRecord::csv_header() << "\n" << outcome.record.to_csv_row() << "\n";
    std::cerr << "wrote " << outcome.files.size() << " ciphertext files to " << out_dir << "\n";
    return 0;
}

int cmd_verify(const std::string& ct_path, const std::string& key_dir) {
    const KeyDir keys = load_keys(key_dir);
    const Context ctx(keys.params);
    auto [ps_ct, ct] = deserialize_ciphertext(read_file(ct_path));
    require_same_keys(keys.params, ps_ct, "ciphertext");

    const SlotVector slots = decode(ctx, decrypt(ctx, keys.sk, ct));
    const NoiseReport rep = measure_noise(ctx, ct, keys.sk);
    std::cout << "slots: " << join_slots(slots) << "\n"
              << noise_csv_header() << "\n"
              << noise_csv_row(rep) << "\n";
    return 0;
}

int cmd_hybrid_check(const std::string& m0_csv, const std::string& m1_csv,
                     const std::string& key_dir, const std::string& basis_dir,
                     std::optional<u64> seed) {
    const KeyDir keys = load_keys(key_dir);
    const Context ctx(keys.params);
    Rng rng(resolve_seed(seed));
    auto [basis, mask] = load_basis_dir(basis_dir, keys.params, keys.pk);

    const SlotVector m0 = parse_record_line(m0_csv, 1, ctx.plain_modulus());
    const SlotVector m1 = parse_record_line(m1_csv, 2, ctx.plain_modulus());
    const HybridReport rep = hybrid_check(ctx, keys.sk, basis, mask, m0, m1, rng);
    for (std::size_t i = 0; i < rep.pass.size(); ++i)
        std::cout << "G_" << i << ": " << (rep.pass[i] ? "pass" : "FAIL") << "\n";
    std::cout << (rep.all_pass ? "all hybrids consistent" : "hybrid chain broken") << "\n";
    return rep.all_pass ? 0 : 1;
}

int cmd_bench(const std::string& d_list, std::size_t count, const std::string& strategies,
              unsigned threads, const std::string& key_dir, const std::string& out_csv,
              std::optional<u64> seed) {
    const KeyDir keys = load_keys(key_dir);
    const Context ctx(keys.params);

    BenchConfig cfg;
    cfg.d_list = parse_size_list(d_list);
    cfg.count = count;
    cfg.threads = threads;
    cfg.seed = resolve_seed(seed);
    {
        std::istringstream is(strategies);
        std::string field;
        while (std::getline(is, field, ',')) cfg.strategies.push_back(parse_strategy(field));
    }

    const auto records = run_bench(ctx, keys.pk, cfg);
    std::ostringstream csv;
    csv << BenchRecord::csv_header() << "\n";
    for (const auto& rec : records) csv << rec.to_csv_row() << "\n";
    std::cout << csv.str();
    if (!out_csv.empty()) {
        std::ofstream os(out_csv);
        if (!os) throw Error("cannot open for writing: " + out_csv);
        os << csv.str();
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"leveled homomorphic encryption with basis-synthesized ciphertexts"};
    app.require_subcommand(1);

    std::optional<u64> seed;
    const auto add_seed = [&seed](CLI::App* cmd) {
        cmd->add_option("--seed", seed,
                        "deterministic RNG seed (falls back to SYFH_SEED, then OS entropy)");
    };

    std::string profile = "desk", out_dir, key_dir, basis_dir, input, ct_path;
    std::string strategy = "synth", strategies = "fresh,synth,pool", d_list = "1,2,4,8";
    std::string m0_csv, m1_csv, out_csv;
    std::size_t d = 4, count = 1000;
    std::uint32_t pool_size = 0;
    unsigned threads = 1;

    auto* keygen_cmd = app.add_subcommand("keygen", "generate and persist a key set");
    keygen_cmd->add_option("--params", profile, "parameter profile: desk or toy");
    keygen_cmd->add_option("--pool-size", pool_size, "override the configured zero-pool size");
    keygen_cmd->add_option("--out", out_dir, "output directory")->required();
    add_seed(keygen_cmd);

    auto* pre_cmd = app.add_subcommand("precompute", "encrypt the unit-vector basis and zero mask");
    pre_cmd->add_option("--d", d, "basis dimension")->required();
    pre_cmd->add_option("--strategy", strategy, "synth (single mask) or pool");
    pre_cmd->add_option("--keys", key_dir, "key directory")->required();
    pre_cmd->add_option("--out", out_dir, "output directory")->required();
    add_seed(pre_cmd);

    auto* ingest_cmd = app.add_subcommand("ingest", "encrypt or synthesize a record stream");
    ingest_cmd->add_option("--input", input, "input file of comma-separated residues, - for stdin")
        ->required();
    ingest_cmd->add_option("--strategy", strategy, "fresh, synth, or pool");
    ingest_cmd->add_option("--keys", key_dir, "key directory")->required();
    ingest_cmd->add_option("--basis", basis_dir, "basis directory (synthesis strategies)");
    ingest_cmd->add_option("--out", out_dir, "output directory")->required();
    add_seed(ingest_cmd);

    auto* verify_cmd = app.add_subcommand("verify", "decrypt a ciphertext file and report noise");
    verify_cmd->add_option("--ct", ct_path, "ciphertext file")->required();
    verify_cmd->add_option("--keys", key_dir, "key directory")->required();

    auto* hybrid_cmd = app.add_subcommand("hybrid-check", "run the coordinate-substitution hybrid chain");
    hybrid_cmd->add_option("--m0", m0_csv, "first message, comma-separated")->required();
    hybrid_cmd->add_option("--m1", m1_csv, "second message, comma-separated")->required();
    hybrid_cmd->add_option("--keys", key_dir, "key directory")->required();
    hybrid_cmd->add_option("--basis", basis_dir, "basis directory")->required();
    add_seed(hybrid_cmd);

    auto* bench_cmd = app.add_subcommand("bench", "ingestion throughput benchmark");
    bench_cmd->add_option("--d-list", d_list, "comma-separated basis dimensions");
    bench_cmd->add_option("--count", count, "vectors per configuration");
    bench_cmd->add_option("--strategies", strategies, "comma-separated strategy list");
    bench_cmd->add_option("--threads", threads, "worker threads for synthesis phases");
    bench_cmd->add_option("--keys", key_dir, "key directory")->required();
    bench_cmd->add_option("--out", out_csv, "CSV output path");
    add_seed(bench_cmd);

    CLI11_PARSE(app, argc, argv);

    try {
        if (keygen_cmd->parsed()) return cmd_keygen(profile, pool_size, out_dir, seed);
        if (pre_cmd->parsed()) return cmd_precompute(d, strategy, key_dir, out_dir, seed);
        if (ingest_cmd->parsed())
            return cmd_ingest(input, strategy, key_dir, basis_dir, out_dir, seed);
        if (verify_cmd->parsed()) return cmd_verify(ct_path, key_dir);
        if (hybrid_cmd->parsed()) return cmd_hybrid_check(m0_csv, m1_csv, key_dir, basis_dir, seed);
        if (bench_cmd->parsed())
            return cmd_bench(d_list, count, strategies, threads, key_dir, out_csv, seed);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
