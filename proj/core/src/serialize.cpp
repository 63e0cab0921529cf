//------------------------------------------------------------------------------
//
//   Copyright 2026 The Epochpay Authors
//
//   Licensed under the Apache License, Version 2.0 (the "License");
//   you may not use this file except in compliance with the License.
//   You may obtain a copy of the License at
//
//       http://www.apache.org/licenses/LICENSE-2.0
//
//   Unless required by applicable law or agreed to in writing, software
//   distributed under the License is distributed on an "AS IS" BASIS,
//   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//   See the License for the specific language governing permissions and
//   limitations under the License.
//
//------------------------------------------------------------------------------

#include "epochpay/serialize.hpp"

#include "epochpay/hash.hpp"

#include <json.hpp>

#include <map>
#include <utility>

namespace epochpay::io {

namespace {

using nlohmann::json;

/// A location inside the document, for error messages.
struct Cursor
{
  const json *node = nullptr;
  std::string path;

  Cursor at(const std::string &key) const
  {
    if (!node->is_object())
    {
      throw ParseError(path, "expected an object");
    }
    std::string child = path.empty() ? key : path + "." + key;
    auto        it    = node->find(key);
    if (it == node->end())
    {
      // Diagnose with the path of the absent field itself, not its parent:
      // that is the string a user greps for in the document.
      throw ParseError(child, "missing required field");
    }
    return Cursor{&*it, std::move(child)};
  }

  std::optional<Cursor> maybe(const std::string &key) const
  {
    if (!node->is_object())
    {
      throw ParseError(path, "expected an object");
    }
    auto it = node->find(key);
    if (it == node->end() || it->is_null())
    {
      return std::nullopt;
    }
    return Cursor{&*it, path.empty() ? key : path + "." + key};
  }

  Cursor index(std::size_t i) const
  {
    return Cursor{&(*node)[i], path + "[" + std::to_string(i) + "]"};
  }

  std::size_t array_size() const
  {
    if (!node->is_array())
    {
      throw ParseError(path, "expected an array");
    }
    return node->size();
  }
};

Amount parse_amount(const Cursor &c)
{
  if (c.node->is_number_integer())
  {
    try
    {
      return Amount::from_units(c.node->get<std::int64_t>());
    }
    catch (const OverflowError &e)
    {
      throw ParseError(c.path, e.what());
    }
  }
  if (c.node->is_string())
  {
    try
    {
      return Amount::parse(c.node->get<std::string>());
    }
    catch (const std::exception &e)
    {
      throw ParseError(c.path, e.what());
    }
  }
  throw ParseError(c.path,
                   "expected an amount (integer or exact decimal string)");
}

Ratio parse_ratio(const Cursor &c)
{
  if (c.node->is_number_integer())
  {
    return Ratio::from_int(c.node->get<std::int64_t>());
  }
  if (c.node->is_string())
  {
    try
    {
      return Ratio::parse(c.node->get<std::string>());
    }
    catch (const std::exception &e)
    {
      throw ParseError(c.path, e.what());
    }
  }
  throw ParseError(
      c.path, "expected a ratio (integer, \"num/den\" or decimal string)");
}

Rate parse_rate(const Cursor &c)
{
  if (!c.node->is_number_unsigned() && !c.node->is_number_integer())
  {
    throw ParseError(c.path, "expected a rate in ppm (non-negative integer)");
  }
  auto v = c.node->get<std::int64_t>();
  if (v < 0)
  {
    throw ParseError(c.path, "rate must be non-negative");
  }
  return Rate{static_cast<std::uint64_t>(v)};
}

int parse_int(const Cursor &c, int min_value)
{
  if (!c.node->is_number_integer())
  {
    throw ParseError(c.path, "expected an integer");
  }
  auto v = c.node->get<std::int64_t>();
  if (v < min_value || v > 1'000'000)
  {
    throw ParseError(c.path, "integer out of range");
  }
  return static_cast<int>(v);
}

std::uint64_t parse_u64(const Cursor &c)
{
  if (!c.node->is_number_integer() || c.node->get<std::int64_t>() < 0)
  {
    throw ParseError(c.path, "expected a non-negative integer");
  }
  return c.node->get<std::uint64_t>();
}

bool parse_bool(const Cursor &c)
{
  if (!c.node->is_boolean())
  {
    throw ParseError(c.path, "expected a boolean");
  }
  return c.node->get<bool>();
}

std::string parse_string(const Cursor &c)
{
  if (!c.node->is_string())
  {
    throw ParseError(c.path, "expected a string");
  }
  return c.node->get<std::string>();
}

std::vector<Amount> parse_amount_list(const Cursor &c)
{
  std::vector<Amount> out;
  std::size_t         n = c.array_size();
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i)
  {
    out.push_back(parse_amount(c.index(i)));
  }
  return out;
}

Action parse_action(const Cursor &c)
{
  std::string text = parse_string(c);
  if (text == "pay_on_time")
  {
    return BuyerAction::PayOnTime;
  }
  if (text == "pay_late")
  {
    return BuyerAction::PayLate;
  }
  if (text == "default")
  {
    return BuyerAction::Default;
  }
  if (text == "deliver_on_time")
  {
    return MerchantAction::DeliverOnTime;
  }
  if (text == "deliver_late")
  {
    return MerchantAction::DeliverLate;
  }
  if (text == "fail_to_deliver")
  {
    return MerchantAction::FailToDeliver;
  }
  throw ParseError(c.path, "unknown action '" + text + "'");
}

sim::Strategy parse_strategy(const Cursor &c)
{
  std::string kind = parse_string(c.at("kind"));
  if (kind == "always_conform")
  {
    return sim::AlwaysConform{};
  }
  if (kind == "always_late")
  {
    return sim::AlwaysLate{};
  }
  if (kind == "default_at")
  {
    return sim::DefaultAtEpoch{parse_u64(c.at("epoch"))};
  }
  if (kind == "grim_conform")
  {
    return sim::GrimConform{};
  }
  if (kind == "deviate_once")
  {
    return sim::DeviateOnceAt{parse_u64(c.at("epoch")),
                              parse_action(c.at("action"))};
  }
  throw ParseError(c.path, "unknown strategy kind '" + kind + "'");
}

incentives::BuyerParams parse_buyer(const Cursor &c)
{
  incentives::BuyerParams p;
  p.service_values    = parse_amount_list(c.at("service_values"));
  p.payments          = parse_amount_list(c.at("payments"));
  p.spoilages         = parse_amount_list(c.at("spoilages"));
  p.late_penalties    = parse_amount_list(c.at("late_penalties"));
  p.timeliness_reward = parse_amount(c.at("timeliness_reward"));
  p.stake_reward      = parse_amount(c.at("stake_reward"));
  p.stake_cost        = parse_amount(c.at("stake_cost"));
  p.financing_cost    = parse_amount(c.at("financing_cost"));
  p.credit_reward     = parse_amount(c.at("credit_reward"));
  p.credit_contraction = parse_amount(c.at("credit_contraction"));
  p.credit_limit      = parse_amount(c.at("credit_limit"));
  p.stake             = parse_amount(c.at("stake"));
  p.credit_weight     = parse_ratio(c.at("credit_weight"));
  p.max_exposure      = parse_amount(c.at("max_exposure"));
  if (auto b = c.maybe("baseline"))
  {
    p.baseline = parse_ratio(*b);
  }
  p.opportunity_rate = parse_rate(c.at("opportunity_rate_ppm"));
  return p;
}

incentives::MerchantParams parse_merchant(const Cursor &c)
{
  incentives::MerchantParams p;
  p.payments          = parse_amount_list(c.at("payments"));
  p.fees              = parse_amount_list(c.at("fees"));
  p.exec_costs        = parse_amount_list(c.at("exec_costs"));
  p.freshness_rewards = parse_amount_list(c.at("freshness_rewards"));
  p.spoilages         = parse_amount_list(c.at("spoilages"));
  p.late_penalties    = parse_amount_list(c.at("late_penalties"));
  p.default_penalties = parse_amount_list(c.at("default_penalties"));
  p.stake_reward      = parse_amount(c.at("stake_reward"));
  p.stake_cost        = parse_amount(c.at("stake_cost"));
  p.liability_cap     = parse_amount(c.at("liability_cap"));
  p.loss_floor        = parse_amount(c.at("loss_floor"));
  return p;
}

json amount_json(Amount a)
{
  return a.to_string();
}

json ratio_json(const Ratio &r)
{
  return r.to_string();
}

json action_json(const Action &a)
{
  return std::visit([](auto v) { return json(to_string(v)); }, a);
}

json strategy_json(const sim::Strategy &s)
{
  struct Visitor
  {
    json operator()(const sim::AlwaysConform &) const
    {
      return json{{"kind", "always_conform"}};
    }
    json operator()(const sim::AlwaysLate &) const
    {
      return json{{"kind", "always_late"}};
    }
    json operator()(const sim::DefaultAtEpoch &v) const
    {
      return json{{"kind", "default_at"}, {"epoch", v.epoch}};
    }
    json operator()(const sim::GrimConform &) const
    {
      return json{{"kind", "grim_conform"}};
    }
    json operator()(const sim::DeviateOnceAt &v) const
    {
      return json{{"kind", "deviate_once"},
                  {"epoch", v.epoch},
                  {"action", action_json(v.action)}};
    }
  };
  return std::visit(Visitor{}, s);
}

json buyer_json(const incentives::BuyerParams &p)
{
  json lists;
  auto amounts = [](const std::vector<Amount> &xs) {
    json a = json::array();
    for (auto const &x : xs)
    {
      a.push_back(amount_json(x));
    }
    return a;
  };
  json out;
  out["service_values"]     = amounts(p.service_values);
  out["payments"]           = amounts(p.payments);
  out["spoilages"]          = amounts(p.spoilages);
  out["late_penalties"]     = amounts(p.late_penalties);
  out["timeliness_reward"]  = amount_json(p.timeliness_reward);
  out["stake_reward"]       = amount_json(p.stake_reward);
  out["stake_cost"]         = amount_json(p.stake_cost);
  out["financing_cost"]     = amount_json(p.financing_cost);
  out["credit_reward"]      = amount_json(p.credit_reward);
  out["credit_contraction"] = amount_json(p.credit_contraction);
  out["credit_limit"]       = amount_json(p.credit_limit);
  out["stake"]              = amount_json(p.stake);
  out["credit_weight"]      = ratio_json(p.credit_weight);
  out["max_exposure"]       = amount_json(p.max_exposure);
  if (p.baseline)
  {
    out["baseline"] = ratio_json(*p.baseline);
  }
  out["opportunity_rate_ppm"] = p.opportunity_rate.ppm;
  return out;
}

json merchant_json(const incentives::MerchantParams &p)
{
  auto amounts = [](const std::vector<Amount> &xs) {
    json a = json::array();
    for (auto const &x : xs)
    {
      a.push_back(amount_json(x));
    }
    return a;
  };
  json out;
  out["payments"]          = amounts(p.payments);
  out["fees"]              = amounts(p.fees);
  out["exec_costs"]        = amounts(p.exec_costs);
  out["freshness_rewards"] = amounts(p.freshness_rewards);
  out["spoilages"]         = amounts(p.spoilages);
  out["late_penalties"]    = amounts(p.late_penalties);
  out["default_penalties"] = amounts(p.default_penalties);
  out["stake_reward"]      = amount_json(p.stake_reward);
  out["stake_cost"]        = amount_json(p.stake_cost);
  out["liability_cap"]     = amount_json(p.liability_cap);
  out["loss_floor"]        = amount_json(p.loss_floor);
  return out;
}

}  // namespace

sim::ScenarioConfig parse_scenario(const std::string &json_text)
{
  json doc;
  try
  {
    doc = json::parse(json_text);
  }
  catch (const json::exception &e)
  {
    throw ParseError("", std::string{"invalid JSON: "} + e.what());
  }
  Cursor root{&doc, ""};

  int version = parse_int(root.at("schema_version"), 1);
  if (version != kSchemaVersion)
  {
    throw ParseError("schema_version", "unsupported schema version");
  }

  sim::ScenarioConfig config;
  config.horizon  = parse_int(root.at("horizon"), 1);
  config.discount = parse_ratio(root.at("discount"));

  Cursor settlement                           = root.at("settlement");
  config.settlement.phase.punishment_epochs   =
      parse_int(settlement.at("punishment_epochs"), 0);
  config.settlement.phase.recovery_levels =
      parse_int(settlement.at("recovery_levels"), 0);
  config.settlement.trust_max  = parse_int(settlement.at("trust_max"), 1);
  config.settlement.risk_bound = parse_ratio(settlement.at("risk_bound"));
  if (auto cap = settlement.maybe("credit_cap"))
  {
    config.settlement.credit_cap = parse_amount(*cap);
  }
  config.settlement.cure_window =
      Hours{parse_int(settlement.at("cure_window_hours"), 0)};

  Cursor pairs = root.at("pairs");
  for (std::size_t i = 0; i < pairs.array_size(); ++i)
  {
    Cursor        pc = pairs.index(i);
    sim::PairSpec pair;
    Cursor        buyer    = pc.at("buyer");
    Cursor        merchant = pc.at("merchant");
    pair.buyer_name        = parse_string(buyer.at("name"));
    pair.merchant_name     = parse_string(merchant.at("name"));
    pair.buyer             = parse_buyer(buyer);
    pair.merchant          = parse_merchant(merchant);
    pair.merchant_stake    = parse_amount(merchant.at("stake"));
    // The repeated-game knobs live at scenario scope; copy them into the
    // per-agent parameter sets so the analytic checks see the same game the
    // engine plays.
    pair.buyer.punishment_epochs = config.settlement.phase.punishment_epochs;
    pair.buyer.discount          = config.discount;
    pair.merchant.punishment_epochs =
        config.settlement.phase.punishment_epochs;
    pair.merchant.discount = config.discount;
    if (auto s = pc.maybe("buyer_strategy"))
    {
      pair.buyer_strategy = parse_strategy(*s);
    }
    if (auto s = pc.maybe("merchant_strategy"))
    {
      pair.merchant_strategy = parse_strategy(*s);
    }
    config.pairs.push_back(std::move(pair));
  }

  if (auto gs = root.maybe("guarantors"))
  {
    for (std::size_t i = 0; i < gs->array_size(); ++i)
    {
      Cursor gc = gs->index(i);
      config.guarantors.push_back(sim::GuarantorSpec{
          parse_string(gc.at("name")), parse_amount(gc.at("stake"))});
    }
  }

  if (auto ac = root.maybe("auction"))
  {
    sim::AuctionScript script;
    script.cap  = parse_rate(ac->at("cap_ppm"));
    Cursor bids = ac->at("bids");
    for (std::size_t i = 0; i < bids.array_size(); ++i)
    {
      Cursor           bc = bids.index(i);
      sim::ScriptedBid bid;
      bid.guarantor = parse_string(bc.at("guarantor"));
      bid.rate      = parse_rate(bc.at("rate_ppm"));
      if (auto r = bc.maybe("reveal"))
      {
        bid.reveal = parse_bool(*r);
      }
      if (auto r = bc.maybe("corrupt_nonce"))
      {
        bid.corrupt_nonce = parse_bool(*r);
      }
      script.bids.push_back(std::move(bid));
    }
    config.auction = std::move(script);
  }

  return config;
}

CheckRequest parse_check_request(const std::string &json_text)
{
  json doc;
  try
  {
    doc = json::parse(json_text);
  }
  catch (const json::exception &e)
  {
    throw ParseError("", std::string{"invalid JSON: "} + e.what());
  }
  Cursor root{&doc, ""};

  int version = parse_int(root.at("schema_version"), 1);
  if (version != kSchemaVersion)
  {
    throw ParseError("schema_version", "unsupported schema version");
  }

  int punishment_epochs = 3;
  if (auto t = root.maybe("punishment_epochs"))
  {
    punishment_epochs = parse_int(*t, 0);
  }
  Ratio discount;
  if (auto d = root.maybe("discount"))
  {
    discount = parse_ratio(*d);
  }

  CheckRequest request;
  auto merchant = root.maybe("merchant");
  auto buyer    = root.maybe("buyer");
  if (merchant.has_value() == buyer.has_value())
  {
    throw ParseError("", "expected exactly one of \"merchant\" or \"buyer\"");
  }
  if (merchant)
  {
    request.merchant                     = parse_merchant(*merchant);
    request.merchant->punishment_epochs = punishment_epochs;
    request.merchant->discount          = discount;
  }
  else
  {
    request.buyer                     = parse_buyer(*buyer);
    request.buyer->punishment_epochs = punishment_epochs;
    request.buyer->discount          = discount;
  }
  return request;
}

std::string scenario_to_json(const sim::ScenarioConfig &config)
{
  json out;
  out["schema_version"] = kSchemaVersion;
  out["horizon"]        = config.horizon;
  out["discount"]       = ratio_json(config.discount);

  json settlement;
  settlement["punishment_epochs"] = config.settlement.phase.punishment_epochs;
  settlement["recovery_levels"]   = config.settlement.phase.recovery_levels;
  settlement["trust_max"]         = config.settlement.trust_max;
  settlement["risk_bound"]        = ratio_json(config.settlement.risk_bound);
  if (config.settlement.credit_cap != no_credit_cap())
  {
    settlement["credit_cap"] = amount_json(config.settlement.credit_cap);
  }
  settlement["cure_window_hours"] = config.settlement.cure_window.count;
  out["settlement"]               = std::move(settlement);

  out["pairs"] = json::array();
  for (auto const &pair : config.pairs)
  {
    json pj;
    pj["buyer"]          = buyer_json(pair.buyer);
    pj["buyer"]["name"]  = pair.buyer_name;
    pj["merchant"]       = merchant_json(pair.merchant);
    pj["merchant"]["name"]  = pair.merchant_name;
    pj["merchant"]["stake"] = amount_json(pair.merchant_stake);
    pj["buyer_strategy"]    = strategy_json(pair.buyer_strategy);
    pj["merchant_strategy"] = strategy_json(pair.merchant_strategy);
    out["pairs"].push_back(std::move(pj));
  }

  out["guarantors"] = json::array();
  for (auto const &g : config.guarantors)
  {
    out["guarantors"].push_back(
        json{{"name", g.name}, {"stake", amount_json(g.stake)}});
  }

  if (config.auction)
  {
    json aj;
    aj["cap_ppm"] = config.auction->cap.ppm;
    aj["bids"]    = json::array();
    for (auto const &bid : config.auction->bids)
    {
      aj["bids"].push_back(json{{"guarantor", bid.guarantor},
                                {"rate_ppm", bid.rate.ppm},
                                {"reveal", bid.reveal},
                                {"corrupt_nonce", bid.corrupt_nonce}});
    }
    out["auction"] = std::move(aj);
  }

  return out.dump(2) + "\n";
}

std::string report_to_json(const incentives::IncentiveReport &report)
{
  json out;
  out["utilities"] = json{
      {"conform", ratio_json(report.utilities.conform)},
      {"late", ratio_json(report.utilities.late)},
      {"default", ratio_json(report.utilities.deviate_default)},
  };
  out["conditions"] = json::array();
  for (auto const &c : report.conditions)
  {
    json cj;
    cj["name"]   = c.name;
    cj["strict"] = c.strict;
    cj["holds"]  = c.holds;
    cj["margin"] = ratio_json(c.margin);
    if (!c.note.empty())
    {
      cj["note"] = c.note;
    }
    out["conditions"].push_back(std::move(cj));
  }
  out["all_hold"] = report.all_hold();
  return out.dump(2) + "\n";
}

std::string trace_to_json(const sim::EpochTrace &trace)
{
  // Transfers speak in agent ids; the per-epoch agent records carry the
  // human names, so build the dictionary once.
  std::map<AgentId, std::string> names;
  for (auto const &epoch : trace.epochs)
  {
    for (auto const &agent : epoch.agents)
    {
      names.emplace(agent.agent, agent.name);
    }
  }
  auto party_json = [&](const Party &party) -> json {
    if (auto const *agent = std::get_if<AgentId>(&party))
    {
      auto it = names.find(*agent);
      return it != names.end() ? json(it->second)
                               : json(to_hex(agent->id));
    }
    return std::get<PoolKind>(party) == PoolKind::Penalty
               ? json("penalty_pool")
               : json("reward_pool");
  };

  json out;
  out["initial_system_value"] = amount_json(trace.initial_system_value);
  out["conserved"]            = trace.conserved;
  out["epochs"]               = json::array();
  for (auto const &epoch : trace.epochs)
  {
    json ej;
    ej["epoch"]        = epoch.epoch.index;
    ej["dropped_txs"]  = epoch.dropped_txs;
    ej["system_value"] = amount_json(epoch.system_value);

    ej["agents"] = json::array();
    for (auto const &agent : epoch.agents)
    {
      json aj;
      aj["name"]         = agent.name;
      aj["role"]         = to_string(agent.agent.role);
      aj["participated"] = agent.participated;
      if (agent.action)
      {
        aj["action"] = action_json(*agent.action);
      }
      aj["stage_utility"] = ratio_json(agent.stage_utility);
      aj["wealth_delta"]  = amount_json(agent.wealth_delta);
      aj["trust"]         = agent.trust_after;
      aj["phase"]         = agent.phase_after.to_string();
      aj["alive"]         = agent.alive_after;
      ej["agents"].push_back(std::move(aj));
    }

    ej["transfers"] = json::array();
    for (auto const &t : epoch.transfers)
    {
      ej["transfers"].push_back(json{{"from", party_json(t.from)},
                                     {"to", party_json(t.to)},
                                     {"amount", amount_json(t.amount)},
                                     {"label", t.label}});
    }

    ej["auctions"] = json::array();
    for (auto const &a : epoch.auctions)
    {
      json aj;
      aj["buyer"]   = party_json(Party{a.buyer});
      aj["deficit"] = amount_json(a.deficit);
      aj["cap_ppm"] = a.cap.ppm;
      aj["cleared"] = a.cleared;
      if (a.cleared)
      {
        aj["winner"]           = party_json(Party{a.winner});
        aj["clearing_rate_ppm"] = a.clearing_rate.ppm;
        aj["fee"]              = amount_json(a.fee);
      }
      json stakes = json::array();
      for (auto const &s : a.stakes)
      {
        stakes.push_back(json{
            {"guarantor", party_json(Party{s.guarantor})},
            {"locked", amount_json(s.locked)},
            {"slashed", s.disposition == StakeDisposition::Slashed},
        });
      }
      aj["stakes"] = std::move(stakes);
      ej["auctions"].push_back(std::move(aj));
    }

    out["epochs"].push_back(std::move(ej));
  }

  out["totals"] = json::array();
  for (auto const &t : trace.totals)
  {
    out["totals"].push_back(json{
        {"name", t.name},
        {"role", to_string(t.agent.role)},
        {"discounted_total", ratio_json(t.discounted_total)},
        {"tail_bound", ratio_json(t.tail_bound)},
    });
  }
  return out.dump(2) + "\n";
}

std::string trace_to_csv(const sim::EpochTrace &trace)
{
  // Names come from user configs, so quote any field that would break the
  // row structure.
  auto field = [](const std::string &text) -> std::string {
    if (text.find_first_of(",\"\n") == std::string::npos)
    {
      return text;
    }
    std::string quoted = "\"";
    for (char ch : text)
    {
      quoted += ch;
      if (ch == '"')
      {
        quoted += '"';
      }
    }
    quoted += '"';
    return quoted;
  };

  std::string out = "epoch,agent,role,participated,action,stage_utility,"
                    "wealth_delta,phase,trust,alive\n";
  for (auto const &epoch : trace.epochs)
  {
    for (auto const &agent : epoch.agents)
    {
      std::string action_text;
      if (agent.action)
      {
        action_text = std::visit([](auto v) { return to_string(v); },
                                 *agent.action);
      }
      out += std::to_string(epoch.epoch.index);
      out += ',';
      out += field(agent.name);
      out += ',';
      out += to_string(agent.agent.role);
      out += ',';
      out += agent.participated ? "true" : "false";
      out += ',';
      out += action_text;
      out += ',';
      out += agent.stage_utility.to_string();
      out += ',';
      out += agent.wealth_delta.to_string();
      out += ',';
      out += field(agent.phase_after.to_string());
      out += ',';
      out += std::to_string(agent.trust_after);
      out += ',';
      out += agent.alive_after ? "true" : "false";
      out += '\n';
    }
  }
  return out;
}

std::string gains_to_json(const std::vector<sim::DeviationGain> &gains)
{
  json out = json::array();
  for (auto const &g : gains)
  {
    out.push_back(json{
        {"action", action_json(g.action)},
        {"gain", ratio_json(g.gain)},
        {"analytic", g.analytic},
        {"profitable", g.gain > Ratio{}},
    });
  }
  return out.dump(2) + "\n";
}

std::string sweep_to_json(const sim::SweepResult &result)
{
  json out;
  out["rows"] = json::array();
  for (auto const &row : result.rows)
  {
    out["rows"].push_back(json{
        {"delta", ratio_json(row.delta)},
        {"default_gain", ratio_json(row.default_gain)},
        {"conform_best", row.conform_best},
    });
  }
  out["empirical_threshold"] =
      result.empirical_threshold ? ratio_json(*result.empirical_threshold)
                                 : json(nullptr);
  json analytic;
  switch (result.analytic.kind)
  {
  case incentives::ThresholdResult::Kind::Ok:
    analytic["kind"] = "ok";
    break;
  case incentives::ThresholdResult::Kind::OverCollateralized:
    analytic["kind"] = "over_collateralized";
    break;
  case incentives::ThresholdResult::Kind::NoDeterrence:
    analytic["kind"] = "no_deterrence";
    break;
  }
  analytic["value"] = ratio_json(result.analytic.value);
  out["analytic"]   = std::move(analytic);
  return out.dump(2) + "\n";
}

std::string costmodel_to_json(const CostModelReport &report)
{
  json out;
  out["onchain"] = json{
      {"messages_per_epoch", report.onchain_messages_per_epoch},
      {"bytes_per_message", report.onchain_bytes_per_message},
      {"bytes_per_epoch", report.onchain_bytes_per_epoch},
  };
  out["offchain"] = json::array();
  for (auto const &row : report.offchain)
  {
    out["offchain"].push_back(json{
        {"batch", row.batch},
        {"leaf_bytes", row.leaf_bytes},
        {"total_bytes", row.total_bytes},
    });
  }
  out["gas_reference"] = json::array();
  for (auto const &row : report.gas_reference)
  {
    out["gas_reference"].push_back(json{
        {"batch", row.batch},
        {"per_tx_total", row.per_tx_total},
        {"batched_total", row.batched_total},
        {"tx_root_submit", row.tx_root_submit},
        {"credit_root_submit", row.credit_root_submit},
        {"savings_percent", percent_2dp(row.savings)},
    });
  }
  out["gas_reference_note"] = report.gas_reference_note;
  return out.dump(2) + "\n";
}

std::string percent_2dp(const Ratio &fraction)
{
  // fraction → percent with two decimals: round_half_even(fraction·10^4)
  // gives hundredths of a percent.
  BigInt hundredths =
      round_half_even_div(fraction.numerator() * 10000,
                          fraction.denominator());
  bool negative = hundredths < 0;
  if (negative)
  {
    hundredths = -hundredths;
  }
  BigInt      whole = hundredths / 100;
  BigInt      frac  = hundredths % 100;
  std::string text  = whole.str();
  std::string frac_text = frac.str();
  if (frac_text.size() < 2)
  {
    frac_text.insert(frac_text.begin(), 2 - frac_text.size(), '0');
  }
  return (negative ? "-" : "") + text + "." + frac_text;
}

}  // namespace epochpay::io
