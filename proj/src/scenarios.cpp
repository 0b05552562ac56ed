// xrl/scenarios.cpp - The three bundled business-process scenarios: file
// search to webmail, database disk-usage report, spreadsheet row to CRM form.
// Expected final environments are constructed by hand, field by field; the
// digest is derived from that construction, never from a simulation run.
#include "xrl/scenarios.hpp"

#include <stdexcept>

#include "xrl/parse.hpp"

namespace xrl
{

namespace
{

constexpr const char * kP1Source = R"yaml(nodes:
  - name: open_file_manager
    id: &open_file_manager 1a7e4c2b-0a91-4f3d-8b5e-0d93a1c40101
  - name: enter_search_phrase
    id: &enter_search_phrase 1a7e4c2b-0a91-4f3d-8b5e-0d93a1c40102
  - name: run_search
    id: &run_search 1a7e4c2b-0a91-4f3d-8b5e-0d93a1c40103
  - name: read_result
    id: &read_result 1a7e4c2b-0a91-4f3d-8b5e-0d93a1c40104
  - name: copy_to_clipboard
    id: &copy_to_clipboard 1a7e4c2b-0a91-4f3d-8b5e-0d93a1c40105
  - name: open_webmail
    id: &open_webmail 1a7e4c2b-0a91-4f3d-8b5e-0d93a1c40106
  - name: compose
    id: &compose 1a7e4c2b-0a91-4f3d-8b5e-0d93a1c40107
  - name: send_mail
    id: &send_mail 1a7e4c2b-0a91-4f3d-8b5e-0d93a1c40108
  - name: finish
    id: &finish 1a7e4c2b-0a91-4f3d-8b5e-0d93a1c40109
elements:
  - &launch
    name: launch
    text: "Launch or focus a desktop application"
    params:
      app: null
  - &type_text
    name: type_text
    text: "Type text into a field of the focused window"
    params:
      target: null
      value: null
  - &click
    name: click
    text: "Click a control in the focused window"
    params:
      target: null
      goto: ""
  - &read_value
    name: read_value
    text: "Read the value of a field in the focused window"
    params:
      target: null
  - &set_clipboard
    name: set_clipboard
    text: "Put a value on the clipboard"
    params:
      value: null
  - &navigate
    name: navigate
    text: "Open a URL in the browser"
    params:
      url: null
  - &send_message
    name: send_message
    text: "Send a message from the focused mail window"
    params:
      to: null
      subject: null
      body: null
  - &wait
    name: wait
    text: "Wait for the given number of milliseconds"
    params:
      ms: 500
start: *open_file_manager
end: *finish
flow:
  - node: *open_file_manager
    action:
      <<: *launch
      params:
        app: totalcmd
    references_in: []
    references_out: [*enter_search_phrase]
  - node: *enter_search_phrase
    action:
      <<: *type_text
      params:
        target: search_input
        value: "quarterly synergy report"
    references_in: [*open_file_manager]
    references_out: [*run_search]
  - node: *run_search
    action:
      <<: *click
      params:
        target: search_button
    references_in: [*enter_search_phrase]
    references_out: [*read_result]
  - node: *read_result
    action:
      <<: *read_value
      params:
        target: search_input
    references_in: [*run_search]
    references_out: [*copy_to_clipboard]
  - node: *copy_to_clipboard
    action:
      <<: *set_clipboard
      params:
        value: $last_read
    references_in: [*read_result]
    references_out: [*open_webmail]
  - node: *open_webmail
    action:
      <<: *navigate
      params:
        url: "https://mail.example.com"
    references_in: [*copy_to_clipboard]
    references_out: [*compose]
  - node: *compose
    action:
      <<: *click
      params:
        target: compose_button
    references_in: [*open_webmail]
    references_out: [*send_mail]
  - node: *send_mail
    action:
      <<: *send_message
      params:
        to: recipient@example.com
        subject: "Search result"
        body: $clipboard
    references_in: [*compose]
    references_out: [*finish]
  - node: *finish
    action:
      <<: *wait
      params:
        ms: 100
    references_in: [*send_mail]
    references_out: []
)yaml";

constexpr const char * kP2Source = R"yaml(nodes:
  - name: open_ssms
    id: &open_ssms 2b8f5d3c-1b02-4a4e-9c6f-1ea4b2d50201
  - name: connect
    id: &connect 2b8f5d3c-1b02-4a4e-9c6f-1ea4b2d50202
  - name: enter_query
    id: &enter_query 2b8f5d3c-1b02-4a4e-9c6f-1ea4b2d50203
  - name: execute
    id: &execute 2b8f5d3c-1b02-4a4e-9c6f-1ea4b2d50204
  - name: await_results
    id: &await_results 2b8f5d3c-1b02-4a4e-9c6f-1ea4b2d50205
  - name: export_report
    id: &export_report 2b8f5d3c-1b02-4a4e-9c6f-1ea4b2d50206
  - name: finish
    id: &finish 2b8f5d3c-1b02-4a4e-9c6f-1ea4b2d50207
elements:
  - &launch
    name: launch
    text: "Launch or focus a desktop application"
    params:
      app: null
  - &click
    name: click
    text: "Click a control in the focused window"
    params:
      target: null
      goto: ""
  - &type_text
    name: type_text
    text: "Type text into a field of the focused window"
    params:
      target: null
      value: null
  - &wait
    name: wait
    text: "Wait for the given number of milliseconds"
    params:
      ms: 500
  - &save_file
    name: save_file
    text: "Save content to a file on disk"
    params:
      path: null
      content: null
start: *open_ssms
end: *finish
flow:
  - node: *open_ssms
    action:
      <<: *launch
      params:
        app: ssms
    references_in: []
    references_out: [*connect]
  - node: *connect
    action:
      <<: *click
      params:
        target: connect_button
    references_in: [*open_ssms]
    references_out: [*enter_query]
  - node: *enter_query
    action:
      <<: *type_text
      params:
        target: query_editor
        value: "EXEC sp_spaceused;"
    references_in: [*connect]
    references_out: [*execute]
  - node: *execute
    action:
      <<: *click
      params:
        target: execute_button
    references_in: [*enter_query]
    references_out: [*await_results]
  - node: *await_results
    action:
      <<: *wait
      params:
        ms: 1000
    references_in: [*execute]
    references_out: [*export_report]
  - node: *export_report
    action:
      <<: *save_file
      params:
        path: report.pdf
        content: "Disk usage report: database SalesDB, data 812 MB, log 64 MB."
    references_in: [*await_results]
    references_out: [*finish]
  - node: *finish
    action:
      <<: *wait
      params:
        ms: 100
    references_in: [*export_report]
    references_out: []
)yaml";

constexpr const char * kP3Source = R"yaml(nodes:
  - name: open_sheet
    id: &open_sheet 3c9a6e4d-2c13-4b5f-8d70-2fb5c3e60301
  - name: read_name
    id: &read_name 3c9a6e4d-2c13-4b5f-8d70-2fb5c3e60302
  - name: copy_name
    id: &copy_name 3c9a6e4d-2c13-4b5f-8d70-2fb5c3e60303
  - name: open_crm
    id: &open_crm 3c9a6e4d-2c13-4b5f-8d70-2fb5c3e60304
  - name: paste_name
    id: &paste_name 3c9a6e4d-2c13-4b5f-8d70-2fb5c3e60305
  - name: back_to_sheet
    id: &back_to_sheet 3c9a6e4d-2c13-4b5f-8d70-2fb5c3e60306
  - name: read_email
    id: &read_email 3c9a6e4d-2c13-4b5f-8d70-2fb5c3e60307
  - name: copy_email
    id: &copy_email 3c9a6e4d-2c13-4b5f-8d70-2fb5c3e60308
  - name: to_crm
    id: &to_crm 3c9a6e4d-2c13-4b5f-8d70-2fb5c3e60309
  - name: paste_email
    id: &paste_email 3c9a6e4d-2c13-4b5f-8d70-2fb5c3e6030a
  - name: sheet_again
    id: &sheet_again 3c9a6e4d-2c13-4b5f-8d70-2fb5c3e6030b
  - name: read_phone
    id: &read_phone 3c9a6e4d-2c13-4b5f-8d70-2fb5c3e6030c
  - name: copy_phone
    id: &copy_phone 3c9a6e4d-2c13-4b5f-8d70-2fb5c3e6030d
  - name: crm_again
    id: &crm_again 3c9a6e4d-2c13-4b5f-8d70-2fb5c3e6030e
  - name: paste_phone
    id: &paste_phone 3c9a6e4d-2c13-4b5f-8d70-2fb5c3e6030f
  - name: save_contact
    id: &save_contact 3c9a6e4d-2c13-4b5f-8d70-2fb5c3e60310
elements:
  - &focus
    name: focus
    text: "Bring an open window to the foreground"
    params:
      window: null
  - &read_value
    name: read_value
    text: "Read the value of a field in the focused window"
    params:
      target: null
  - &set_clipboard
    name: set_clipboard
    text: "Put a value on the clipboard"
    params:
      value: null
  - &navigate
    name: navigate
    text: "Open a URL in the browser"
    params:
      url: null
  - &get_clipboard
    name: get_clipboard
    text: "Paste the clipboard into a field of the focused window"
    params:
      target: null
  - &click
    name: click
    text: "Click a control in the focused window"
    params:
      target: null
      goto: ""
start: *open_sheet
end: *save_contact
flow:
  - node: *open_sheet
    action:
      <<: *focus
      params:
        window: clients.xlsx
    references_in: []
    references_out: [*read_name]
  - node: *read_name
    action:
      <<: *read_value
      params:
        target: name_cell
    references_in: [*open_sheet]
    references_out: [*copy_name]
  - node: *copy_name
    action:
      <<: *set_clipboard
      params:
        value: $last_read
    references_in: [*read_name]
    references_out: [*open_crm]
  - node: *open_crm
    action:
      <<: *navigate
      params:
        url: "https://crm.example.com/contacts/new"
    references_in: [*copy_name]
    references_out: [*paste_name]
  - node: *paste_name
    action:
      <<: *get_clipboard
      params:
        target: name_field
    references_in: [*open_crm]
    references_out: [*back_to_sheet]
  - node: *back_to_sheet
    action:
      <<: *focus
      params:
        window: clients.xlsx
    references_in: [*paste_name]
    references_out: [*read_email]
  - node: *read_email
    action:
      <<: *read_value
      params:
        target: email_cell
    references_in: [*back_to_sheet]
    references_out: [*copy_email]
  - node: *copy_email
    action:
      <<: *set_clipboard
      params:
        value: $last_read
    references_in: [*read_email]
    references_out: [*to_crm]
  - node: *to_crm
    action:
      <<: *focus
      params:
        window: "https://crm.example.com/contacts/new"
    references_in: [*copy_email]
    references_out: [*paste_email]
  - node: *paste_email
    action:
      <<: *get_clipboard
      params:
        target: email_field
    references_in: [*to_crm]
    references_out: [*sheet_again]
  - node: *sheet_again
    action:
      <<: *focus
      params:
        window: clients.xlsx
    references_in: [*paste_email]
    references_out: [*read_phone]
  - node: *read_phone
    action:
      <<: *read_value
      params:
        target: phone_cell
    references_in: [*sheet_again]
    references_out: [*copy_phone]
  - node: *copy_phone
    action:
      <<: *set_clipboard
      params:
        value: $last_read
    references_in: [*read_phone]
    references_out: [*crm_again]
  - node: *crm_again
    action:
      <<: *focus
      params:
        window: "https://crm.example.com/contacts/new"
    references_in: [*copy_phone]
    references_out: [*paste_phone]
  - node: *paste_phone
    action:
      <<: *get_clipboard
      params:
        target: phone_field
    references_in: [*crm_again]
    references_out: [*save_contact]
  - node: *save_contact
    action:
      <<: *click
      params:
        target: save_button
    references_in: [*paste_phone]
    references_out: []
)yaml";

constexpr const char * kP1Phrase = "quarterly synergy report";
constexpr const char * kP2Report =
  "Disk usage report: database SalesDB, data 812 MB, log 64 MB.";
constexpr const char * kP2Query = "EXEC sp_spaceused;";
constexpr const char * kCrmUrl = "https://crm.example.com/contacts/new";
constexpr const char * kMailUrl = "https://mail.example.com";
constexpr const char * kName = "ACME Sp. z o.o.";
constexpr const char * kEmail = "office@acme.example";
constexpr const char * kPhone = "+48 22 123 45 67";

XrlDocument parse_or_die(const char * source, const char * which)
{
  ParseResult r = parse_document(source);
  if (!r.ok())
    throw std::logic_error(std::string("bundled scenario ") + which + " does not parse: " +
                           (r.diagnostics.empty() ? "?" : r.diagnostics.front().message));
  return std::move(*r.document);
}

Scenario make_p1()
{
  Scenario s;
  s.name = "p1_search_email";
  s.doc = parse_or_die(kP1Source, "p1");

  s.env0.files["docs/q3_notes.txt"] =
    "Findings: the quarterly synergy report is due Friday.";

  VirtualEnv final_env = s.env0;
  final_env.windows["totalcmd"] = {{"search_input", kP1Phrase}, {"search_button", "clicked"}};
  final_env.windows[kMailUrl] = {{"compose_button", "clicked"}};
  final_env.focused_window = kMailUrl;
  final_env.clipboard = kP1Phrase;
  final_env.scratch["_last_read"] = kP1Phrase;
  final_env.sent_messages.push_back({"recipient@example.com", "Search result", kP1Phrase});
  s.expected_final = final_env;
  s.expected_digest = env_digest(final_env);
  return s;
}

Scenario make_p2()
{
  Scenario s;
  s.name = "p2_db_report";
  s.doc = parse_or_die(kP2Source, "p2");

  VirtualEnv final_env;
  final_env.windows["ssms"] = {{"connect_button", "clicked"},
                               {"query_editor", kP2Query},
                               {"execute_button", "clicked"}};
  final_env.focused_window = "ssms";
  final_env.files["report.pdf"] = kP2Report;
  s.expected_final = final_env;
  s.expected_digest = env_digest(final_env);
  return s;
}

Scenario make_p3()
{
  Scenario s;
  s.name = "p3_excel_crm";
  s.doc = parse_or_die(kP3Source, "p3");

  s.env0.windows["clients.xlsx"] = {{"name_cell", kName},
                                    {"email_cell", kEmail},
                                    {"phone_cell", kPhone}};
  s.env0.files["clients.xlsx"] =
    "name;email;phone\nACME Sp. z o.o.;office@acme.example;+48 22 123 45 67";

  VirtualEnv final_env = s.env0;
  final_env.windows[kCrmUrl] = {{"name_field", kName},
                                {"email_field", kEmail},
                                {"phone_field", kPhone},
                                {"save_button", "clicked"}};
  final_env.focused_window = kCrmUrl;
  final_env.clipboard = kPhone;
  final_env.scratch["_last_read"] = kPhone;
  s.expected_final = final_env;
  s.expected_digest = env_digest(final_env);
  return s;
}

HandlerOutcome h_save_file(const ResolvedAction & a, const VirtualEnv & env0,
                           const std::vector<SuccessorInfo> & s)
{
  VirtualEnv env = env0;
  const ScalarValue * path = a.params.find("path");
  const ScalarValue * content = a.params.find("content");
  std::string text = content ? content->to_text() : std::string();
  if (text == "$clipboard") text = env.clipboard;
  env.files[path ? path->to_text() : std::string()] = text;
  return choose_successor(a, std::move(env), s);
}

}  // namespace

std::vector<std::string> scenario_names()
{
  return {"p1_search_email", "p2_db_report", "p3_excel_crm"};
}

std::string scenario_source(std::string_view name)
{
  if (name == "p1_search_email") return kP1Source;
  if (name == "p2_db_report") return kP2Source;
  if (name == "p3_excel_crm") return kP3Source;
  return {};
}

std::optional<Scenario> load_scenario(std::string_view name)
{
  if (name == "p1_search_email") return make_p1();
  if (name == "p2_db_report") return make_p2();
  if (name == "p3_excel_crm") return make_p3();
  return std::nullopt;
}

HandlerRegistry scenario_registry(std::string_view name)
{
  HandlerRegistry registry = builtin_handlers();
  // The report process writes a file, which no builtin does; it registers
  // the save_file extension through the ordinary handler mechanism.
  if (name == "p2_db_report") registry.register_handler({"save_file", h_save_file});
  return registry;
}

}  // namespace xrl
