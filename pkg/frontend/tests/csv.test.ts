import { readFileSync } from "node:fs";
import { join } from "node:path";

import { describe, expect, it } from "vitest";

import { parseCsv } from "../src/csv.js";

describe("parseCsv", () => {
  it("splits plain rows", () => {
    expect(parseCsv("a,b,c\n1,2,3\n")).toEqual([
      ["a", "b", "c"],
      ["1", "2", "3"],
    ]);
  });

  it("honors quoted commas, quotes, and newlines", () => {
    const text = 'id,template\n1,"hello, ""world"""\n2,"two\nlines"\n';
    expect(parseCsv(text)).toEqual([
      ["id", "template"],
      ["1", 'hello, "world"'],
      ["2", "two\nlines"],
    ]);
  });

  it("keeps empty fields", () => {
    expect(parseCsv("a,,c\n,\n")).toEqual([
      ["a", "", "c"],
      ["", ""],
    ]);
  });

  it("accepts crlf endings", () => {
    expect(parseCsv("a,b\r\n1,2\r\n")).toEqual([
      ["a", "b"],
      ["1", "2"],
    ]);
  });

  it("parses the recorded template export", () => {
    const text = readFileSync(join(__dirname, "fixtures", "events.csv"), "utf-8");
    const rows = parseCsv(text);
    expect(rows[0]).toEqual(["EventId", "EventTemplate", "Occurrences"]);
    // conservation: template occurrences cover the whole uploaded file
    const log = readFileSync(join(__dirname, "fixtures", "uploaded_log.txt"), "utf-8");
    const lineCount = log.split("\n").filter((line) => line !== "").length;
    const occurrences = rows.slice(1).reduce((sum, row) => sum + Number(row[2]), 0);
    expect(occurrences).toBe(lineCount);
  });
});
