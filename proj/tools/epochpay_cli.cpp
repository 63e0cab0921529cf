// Copyright 2026 The Epochpay Authors
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

// Operator surface for the protocol model:
//
//   epochpay check FILE [--json]             incentive-condition report
//   epochpay simulate FILE [--horizon N]
//                    [--out csv|json]
//                    [--output PATH]         epoch-by-epoch trace
//   epochpay sweep FILE [--step RATIO]       discount-factor sweep
//   epochpay merkle build|prove|verify ...   commitment demos
//   epochpay auction FILE                    one scripted over-limit auction
//   epochpay costmodel [--batch N ...]       commitment-cost report
//
// Exit codes are stable: 0 success / conditions hold, 1 a checked condition
// or proof fails, 2 malformed input or usage error.

#include "epochpay/auction.hpp"
#include "epochpay/costmodel.hpp"
#include "epochpay/incentives.hpp"
#include "epochpay/leaf.hpp"
#include "epochpay/merkle.hpp"
#include "epochpay/serialize.hpp"
#include "epochpay/sim.hpp"
#include "epochpay/tx.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace epochpay;
using nlohmann::json;

constexpr int kExitOk        = 0;
constexpr int kExitCondition = 1;
constexpr int kExitInput     = 2;

class InputError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

std::string slurp(const std::string &path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in)
  {
    throw InputError("cannot open file: " + path);
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void emit(const std::string &text, const std::string &output_path)
{
  if (output_path.empty())
  {
    std::cout << text;
    return;
  }
  std::ofstream out(output_path, std::ios::binary);
  if (!out)
  {
    throw InputError("cannot write file: " + output_path);
  }
  out << text;
}

// ---------------------------------------------------------------------------
// check

void print_human_report(const incentives::IncentiveReport &report)
{
  std::cout << "stage utilities (units):\n";
  std::cout << "  conform  " << report.utilities.conform.to_string() << "\n";
  std::cout << "  late     " << report.utilities.late.to_string() << "\n";
  std::cout << "  default  " << report.utilities.deviate_default.to_string()
            << "\n";
  std::cout << "conditions:\n";
  for (const auto &c : report.conditions)
  {
    std::cout << "  " << (c.holds ? "[ok]  " : "[FAIL] ") << c.name
              << "  margin=" << c.margin.to_string()
              << (c.strict ? " (strict)" : " (weak)");
    if (!c.note.empty())
    {
      std::cout << "  -- " << c.note;
    }
    std::cout << "\n";
  }
}

int cmd_check(const std::string &file, bool as_json)
{
  io::CheckRequest request = io::parse_check_request(slurp(file));
  incentives::IncentiveReport report =
      request.merchant ? incentives::check_merchant_conditions(*request.merchant)
                       : incentives::check_buyer_conditions(*request.buyer);
  if (as_json)
  {
    std::cout << io::report_to_json(report);
  }
  else
  {
    print_human_report(report);
  }
  return report.all_hold() ? kExitOk : kExitCondition;
}

// ---------------------------------------------------------------------------
// simulate

int cmd_simulate(const std::string &file, std::optional<int> horizon,
                 const std::string &format, const std::string &output_path)
{
  sim::ScenarioConfig config = io::parse_scenario(slurp(file));
  if (horizon)
  {
    if (*horizon < 1)
    {
      throw InputError("--horizon must be at least 1");
    }
    config.horizon = *horizon;
  }
  sim::EpochTrace trace = sim::run_scenario(config);
  emit(format == "json" ? io::trace_to_json(trace) : io::trace_to_csv(trace),
       output_path);
  return kExitOk;
}

// ---------------------------------------------------------------------------
// sweep

int cmd_sweep(const std::string &file, const std::string &step_text)
{
  sim::ScenarioConfig config = io::parse_scenario(slurp(file));
  Ratio               step;
  try
  {
    step = Ratio::parse(step_text);
  }
  catch (const std::exception &e)
  {
    throw InputError(std::string{"bad --step: "} + e.what());
  }
  sim::SweepResult result = sim::sweep_delta(config, step);
  std::cout << io::sweep_to_json(result);
  return kExitOk;
}

// ---------------------------------------------------------------------------
// merkle: a small transaction-batch document feeds all three verbs.
//
//   {
//     "schema_version": 1,
//     "epoch": 0,
//     "transactions": [
//       {"id": "t1", "buyer": "alice", "merchant": "bob",
//        "payment": "100", "service_value": "120"}
//     ]
//   }

std::vector<LeafRecord> parse_batch(const std::string &text)
{
  json doc;
  try
  {
    doc = json::parse(text);
  }
  catch (const json::exception &e)
  {
    throw InputError(std::string{"invalid JSON: "} + e.what());
  }
  if (doc.value("schema_version", 0) != io::kSchemaVersion)
  {
    throw InputError("unsupported schema_version");
  }
  EpochIndex epoch{doc.value("epoch", std::uint64_t{0})};
  if (!doc.contains("transactions") || !doc["transactions"].is_array() ||
      doc["transactions"].empty())
  {
    throw InputError("transactions: expected a non-empty array");
  }

  std::vector<LeafRecord> leaves;
  for (const auto &entry : doc["transactions"])
  {
    Transaction tx;
    try
    {
      tx.id       = id_from_name(entry.at("id").get<std::string>());
      tx.buyer    = AgentId{id_from_name(entry.at("buyer").get<std::string>()),
                            Role::Buyer};
      tx.merchant = AgentId{
          id_from_name(entry.at("merchant").get<std::string>()),
          Role::Merchant};
      tx.payment       = Amount::parse(entry.at("payment").get<std::string>());
      tx.service_value =
          Amount::parse(entry.at("service_value").get<std::string>());
    }
    catch (const std::exception &e)
    {
      throw InputError(std::string{"transactions: "} + e.what());
    }
    tx.epoch = epoch;
    validate(tx);
    leaves.push_back(encode_tx_leaf(tx));
  }
  return leaves;
}

json proof_json(const Digest32 &root, const InclusionProof &proof)
{
  json out;
  out["schema_version"] = io::kSchemaVersion;
  out["root"]           = to_hex(root);
  out["leaf_index"]     = proof.leaf_index;
  out["leaf_count"]     = proof.leaf_count;
  out["siblings"]       = json::array();
  for (const auto &sibling : proof.siblings)
  {
    out["siblings"].push_back(to_hex(sibling));
  }
  return out;
}

int cmd_merkle_build(const std::string &file)
{
  std::vector<LeafRecord> leaves = parse_batch(slurp(file));
  MerkleTree              tree   = MerkleTree::build(leaves);
  json out;
  out["schema_version"] = io::kSchemaVersion;
  out["root"]           = to_hex(tree.root());
  out["leaf_count"]     = tree.leaf_count();
  std::cout << out.dump(2) << "\n";
  return kExitOk;
}

int cmd_merkle_prove(const std::string &file, std::size_t index,
                     const std::string &output_path)
{
  std::vector<LeafRecord> leaves = parse_batch(slurp(file));
  if (index >= leaves.size())
  {
    throw InputError("--index past the end of the batch");
  }
  MerkleTree tree = MerkleTree::build(leaves);
  emit(proof_json(tree.root(), tree.prove(index)).dump(2) + "\n", output_path);
  return kExitOk;
}

int cmd_merkle_verify(const std::string &file, std::size_t index,
                      const std::string &proof_path)
{
  std::vector<LeafRecord> leaves = parse_batch(slurp(file));
  if (index >= leaves.size())
  {
    throw InputError("--index past the end of the batch");
  }

  json doc;
  try
  {
    doc = json::parse(slurp(proof_path));
  }
  catch (const json::exception &e)
  {
    throw InputError(std::string{"invalid proof JSON: "} + e.what());
  }
  Digest32       root;
  InclusionProof proof;
  try
  {
    root             = digest_from_hex(doc.at("root").get<std::string>());
    proof.leaf_index = doc.at("leaf_index").get<std::size_t>();
    proof.leaf_count = doc.at("leaf_count").get<std::size_t>();
    for (const auto &sibling : doc.at("siblings"))
    {
      proof.siblings.push_back(digest_from_hex(sibling.get<std::string>()));
    }
  }
  catch (const std::exception &e)
  {
    throw InputError(std::string{"malformed proof: "} + e.what());
  }

  bool valid = verify_inclusion(root, leaves[index], proof);
  json out;
  out["schema_version"] = io::kSchemaVersion;
  out["valid"]          = valid;
  std::cout << out.dump(2) << "\n";
  return valid ? kExitOk : kExitCondition;
}

// ---------------------------------------------------------------------------
// auction: replay the scenario's scripted auction once, standalone, for the
// first pair's over-limit deficit.

int cmd_auction(const std::string &file)
{
  sim::ScenarioConfig config = io::parse_scenario(slurp(file));
  if (config.pairs.empty())
  {
    throw InputError("scenario has no pairs");
  }
  if (!config.auction || config.auction->bids.empty())
  {
    throw InputError("scenario has no auction script");
  }

  const sim::PairSpec &pair = config.pairs[0];
  Amount owed;
  for (const Amount &payment : pair.buyer.payments)
  {
    owed = owed + payment;
  }
  Amount deficit = owed - pair.buyer.credit_limit;
  if (deficit <= Amount{})
  {
    throw InputError("the first pair's batch sits inside its credit line; "
                     "nothing to fund");
  }

  AgentId buyer{id_from_name(pair.buyer_name), Role::Buyer};
  AuctionRegistry registry;
  Auction auction =
      open_auction(buyer, deficit, config.auction->cap, EpochIndex{0},
                   registry);

  // Commit phase: every scripted guarantor locks the full deficit.
  std::vector<std::pair<sim::ScriptedBid, Nonce32>> commits;
  for (const sim::ScriptedBid &bid : config.auction->bids)
  {
    const sim::GuarantorSpec *spec = nullptr;
    for (const auto &g : config.guarantors)
    {
      if (g.name == bid.guarantor)
      {
        spec = &g;
      }
    }
    if (spec == nullptr)
    {
      throw InputError("auction bid names unknown guarantor: " +
                       bid.guarantor);
    }
    AgentId gid{id_from_name(bid.guarantor), Role::Guarantor};
    Nonce32 nonce{};
    nonce.fill(static_cast<std::uint8_t>(commits.size() + 1));
    auction.commit_bid(gid, Auction::bid_digest(bid.rate, nonce, gid),
                       spec->stake);
    commits.emplace_back(bid, nonce);
  }

  auction.begin_reveal();
  for (const auto &[bid, nonce] : commits)
  {
    if (!bid.reveal)
    {
      continue;  // never opened: slashed at settlement
    }
    Nonce32 opened = nonce;
    if (bid.corrupt_nonce)
    {
      opened[0] ^= 0xFF;  // does not open the commitment: slashed
    }
    AgentId gid{id_from_name(bid.guarantor), Role::Guarantor};
    auction.reveal_bid(gid, bid.rate, opened);
  }

  AuctionOutcome outcome = auction.settle();

  json out;
  out["schema_version"] = io::kSchemaVersion;
  out["deficit"]        = deficit.to_string();
  out["cap_ppm"]        = config.auction->cap.ppm;
  out["cleared"]        = outcome.cleared;
  if (outcome.cleared)
  {
    for (const auto &[bid, nonce] : commits)
    {
      if (AgentId{id_from_name(bid.guarantor), Role::Guarantor} ==
          outcome.winner)
      {
        out["winner"] = bid.guarantor;
      }
    }
    out["clearing_rate_ppm"] = outcome.clearing_rate.ppm;
    out["fee"] = auction_fee(deficit, outcome.clearing_rate).to_string();
  }
  else
  {
    out["failure"] = "no_admissible_bid";
  }
  out["stakes"] = json::array();
  for (std::size_t i = 0; i < outcome.stakes.size(); ++i)
  {
    const GuarantorResult &result = outcome.stakes[i];
    json row;
    for (const auto &[bid, nonce] : commits)
    {
      if (AgentId{id_from_name(bid.guarantor), Role::Guarantor} ==
          result.guarantor)
      {
        row["guarantor"] = bid.guarantor;
      }
    }
    row["locked"] = result.locked.to_string();
    row["disposition"] =
        result.disposition == StakeDisposition::Slashed ? "slashed"
                                                        : "released";
    out["stakes"].push_back(std::move(row));
  }
  std::cout << out.dump(2) << "\n";
  return outcome.cleared ? kExitOk : kExitCondition;
}

// ---------------------------------------------------------------------------
// costmodel

int cmd_costmodel(const std::vector<std::size_t> &batches)
{
  std::cout << io::costmodel_to_json(cost_model(batches));
  return kExitOk;
}

}  // namespace

int main(int argc, char **argv)
{
  CLI::App app{"Executable model of an epoch-batched, credit-based "
               "micropayment protocol"};
  app.require_subcommand(1);

  // check
  std::string check_file;
  bool        check_json = false;
  CLI::App  *check = app.add_subcommand(
      "check", "Evaluate the incentive conditions for one parameter set");
  check->add_option("file", check_file, "check-request JSON document")
      ->required();
  check->add_flag("--json", check_json, "emit the machine-readable report");

  // simulate
  std::string        sim_file;
  int                sim_horizon = 0;
  std::string        sim_format  = "csv";
  std::string        sim_output;
  CLI::App *simulate = app.add_subcommand(
      "simulate", "Run a scenario and emit the epoch-by-epoch trace");
  simulate->add_option("file", sim_file, "scenario JSON document")->required();
  CLI::Option *horizon_opt = simulate->add_option(
      "--horizon", sim_horizon, "override the scenario horizon (epochs)");
  simulate->add_option("--out", sim_format, "trace format: csv or json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  simulate->add_option("--output", sim_output,
                       "write the trace to a file instead of stdout");

  // sweep
  std::string sweep_file;
  std::string sweep_step = "1/100";
  CLI::App   *sweep = app.add_subcommand(
      "sweep", "Sweep the discount factor and locate the default threshold");
  sweep->add_option("file", sweep_file, "scenario JSON document")->required();
  sweep->add_option("--step", sweep_step, "grid step, an exact ratio")
      ->capture_default_str();

  // merkle
  CLI::App *merkle = app.add_subcommand(
      "merkle", "Build, prove against, and verify epoch commitment trees");
  merkle->require_subcommand(1);
  std::string batch_file;
  std::size_t leaf_index = 0;
  std::string proof_out;
  std::string proof_in;
  CLI::App   *merkle_build =
      merkle->add_subcommand("build", "Merkle root of a transaction batch");
  merkle_build->add_option("file", batch_file, "batch JSON document")
      ->required();
  CLI::App *merkle_prove = merkle->add_subcommand(
      "prove", "Inclusion proof for one transaction of the batch");
  merkle_prove->add_option("file", batch_file, "batch JSON document")
      ->required();
  merkle_prove->add_option("--index", leaf_index, "leaf position")->required();
  merkle_prove->add_option("--output", proof_out,
                           "write the proof to a file instead of stdout");
  CLI::App *merkle_verify = merkle->add_subcommand(
      "verify", "Check an inclusion proof against a batch transaction");
  merkle_verify->add_option("file", batch_file, "batch JSON document")
      ->required();
  merkle_verify->add_option("--index", leaf_index, "leaf position")
      ->required();
  merkle_verify->add_option("--proof", proof_in, "proof JSON document")
      ->required();

  // auction
  std::string auction_file;
  CLI::App   *auction = app.add_subcommand(
      "auction", "Replay a scenario's scripted over-limit auction once");
  auction->add_option("file", auction_file, "scenario JSON document")
      ->required();

  // costmodel
  std::vector<std::size_t> batches{1, 100, 200, 300, 400, 500};
  CLI::App *costmodel = app.add_subcommand(
      "costmodel", "Commitment-cost report: constant on-chain, linear off-chain");
  costmodel->add_option("--batch", batches, "batch sizes to tabulate")
      ->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try
  {
    if (*check)
    {
      return cmd_check(check_file, check_json);
    }
    if (*simulate)
    {
      std::optional<int> horizon;
      if (horizon_opt->count() > 0)
      {
        horizon = sim_horizon;
      }
      return cmd_simulate(sim_file, horizon, sim_format, sim_output);
    }
    if (*sweep)
    {
      return cmd_sweep(sweep_file, sweep_step);
    }
    if (*merkle_build)
    {
      return cmd_merkle_build(batch_file);
    }
    if (*merkle_prove)
    {
      return cmd_merkle_prove(batch_file, leaf_index, proof_out);
    }
    if (*merkle_verify)
    {
      return cmd_merkle_verify(batch_file, leaf_index, proof_in);
    }
    if (*auction)
    {
      return cmd_auction(auction_file);
    }
    if (*costmodel)
    {
      return cmd_costmodel(batches);
    }
  }
  catch (const io::ParseError &e)
  {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitInput;
  }
  catch (const InputError &e)
  {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  }
  catch (const std::exception &e)
  {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}
