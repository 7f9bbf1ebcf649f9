#pragma once

#include <string>
#include <vector>

#include "qqual/corpus.hpp"

// Hand-checked snippets, five valid and five invalid per language. The invalid
// ones are the kinds of fragments people paste into questions: bare statements
// outside a type, ellipses, missing delimiters, stack traces.
struct SuiteSnippet {
  qqual::corpus::Language language;
  bool valid;
  std::string note;
  std::string source;
};

inline const std::vector<SuiteSnippet>& parsability_suite() {
  using qqual::corpus::Language;
  static const std::vector<SuiteSnippet> suite{
      // ---------------------------------------------------------------- Java
      {Language::Java, true, "empty class", "class A {}"},
      {Language::Java, true, "imports and generic method",
       R"(package demo;

import java.util.*;
import java.util.stream.Collectors;

public class Names {
    public static <T extends Comparable<T>> List<T> sorted(Collection<T> in) {
        List<T> out = new ArrayList<>(in);
        Collections.sort(out);
        return out;
    }

    public static void main(String[] args) {
        List<String> xs = Arrays.asList("b", "a");
        System.out.println(sorted(xs).stream().map(String::toUpperCase).collect(Collectors.joining(",")));
    }
})"},
      {Language::Java, true, "interface, enum and lambda",
       R"(interface Shape { double area(); }

enum Color { RED, GREEN; }

final class Square implements Shape {
    private final double s;
    Square(double s) { this.s = s; }
    @Override
    public double area() { return s * s; }
    static Runnable task() { return () -> System.out.println("run"); }
})"},
      {Language::Java, true, "try with resources and switch",
       R"(import java.io.*;

class Reader {
    int count(String path) throws IOException {
        int n = 0;
        try (BufferedReader r = new BufferedReader(new FileReader(path))) {
            String line;
            while ((line = r.readLine()) != null) {
                switch (line.length()) {
                    case 0: break;
                    default: n++;
                }
            }
        } catch (FileNotFoundException e) {
            return -1;
        }
        return n;
    }
})"},
      {Language::Java, true, "anonymous class and arrays",
       R"(public class Main {
    int[][] grid = new int[3][4];
    Comparable<String> c = new Comparable<String>() {
        public int compareTo(String o) { return 0; }
    };
    char ch = 'x';
    long big = 10_000L;
})"},
      {Language::Java, false, "statement outside a class", "System.out.println(\"hi\");"},
      {Language::Java, false, "method without class",
       "public void run() {\n    int x = 1;\n}"},
      {Language::Java, false, "missing semicolon",
       "class A {\n    void f() {\n        int x = 1\n        x++;\n    }\n}"},
      {Language::Java, false, "ellipsis placeholder", "class A {\n    ...\n}"},
      {Language::Java, false, "stack trace",
       "Exception in thread \"main\" java.lang.NullPointerException\n    at com.example.Main.main(Main.java:14)"},

      // ---------------------------------------------------------------- C#
      {Language::CSharp, true, "empty class", "class A {}"},
      {Language::CSharp, true, "namespace, properties and LINQ",
       R"(using System;
using System.Linq;
using System.Collections.Generic;

namespace Demo
{
    public class Person
    {
        public string Name { get; set; }
        public int Age { get; private set; }

        public static IEnumerable<string> Adults(List<Person> people)
        {
            return people.Where(p => p.Age >= 18).Select(p => p.Name);
        }
    }
})"},
      {Language::CSharp, true, "async method and using statement",
       R"(using System.IO;
using System.Threading.Tasks;

class Loader
{
    public async Task<string> ReadAsync(string path)
    {
        using (var reader = new StreamReader(path))
        {
            return await reader.ReadToEndAsync();
        }
    }
})"},
      {Language::CSharp, true, "interface, struct and enum",
       R"(public interface IShape { double Area(); }

public struct Point { public int X; public int Y; }

public enum Kind { Small = 1, Large = 2 }

public class Circle : IShape
{
    private readonly double r;
    public Circle(double r) { this.r = r; }
    public double Area() => System.Math.PI * r * r;
})"},
      {Language::CSharp, true, "foreach, string interpolation and nullable",
       R"(class Report
{
    int? limit = null;
    void Print(string[] items)
    {
        foreach (var item in items)
        {
            if (item == null) continue;
            System.Console.WriteLine($"item {item} of {items.Length}");
        }
    }
})"},
      {Language::CSharp, false, "statement outside a type", "Console.WriteLine(\"hi\");"},
      {Language::CSharp, false, "method without class",
       "public void Save()\n{\n    db.SaveChanges();\n}"},
      {Language::CSharp, false, "unbalanced braces",
       "class A\n{\n    void F()\n    {\n        int x = 1;\n}"},
      {Language::CSharp, false, "ellipsis placeholder", "class A\n{\n    ...\n}"},
      {Language::CSharp, false, "exception output",
       "System.NullReferenceException: Object reference not set to an instance of an object.\n   at Demo.Program.Main()"},

      // ---------------------------------------------------------------- JavaScript
      {Language::JavaScript, true, "simple call", "console.log(\"hi\");"},
      {Language::JavaScript, true, "functions, arrows and template",
       R"(function add(a, b) {
  return a + b;
}
const double = x => x * 2;
const label = `sum is ${add(1, double(2))}`;
document.getElementById("out").textContent = label;)"},
      {Language::JavaScript, true, "jQuery handler without semicolons",
       R"($(document).ready(function () {
  $("#btn").click(function (e) {
    e.preventDefault()
    var v = $(this).val()
    if (v) { alert(v) }
  })
}))"},
      {Language::JavaScript, true, "class, async and destructuring",
       R"(class Store {
  constructor(items = []) {
    this.items = items;
  }
  async load(url) {
    const { data, status } = await fetch(url).then(r => r.json());
    return status === 200 ? [...this.items, ...data] : this.items;
  }
}
export default Store;)"},
      {Language::JavaScript, true, "object literal and regex",
       R"(var config = {
  name: "app",
  retries: 3,
  match: /^[a-z]+$/i,
  handler() { return this.retries; }
};
for (var key in config) { console.log(key); })"},
      {Language::JavaScript, false, "unbalanced call", "foo("},
      {Language::JavaScript, false, "missing closing brace",
       "function f() {\n  if (x) {\n    return 1;\n}"},
      {Language::JavaScript, false, "HTML markup", "<div id=\"app\"></div>"},
      {Language::JavaScript, false, "ellipsis placeholder", "var a = [1, 2, ...];\n...\n"},
      {Language::JavaScript, false, "console error text",
       "Uncaught TypeError: Cannot read property 'length' of undefined\n    at app.js:12"},

      // ---------------------------------------------------------------- Python
      {Language::Python, true, "assignment", "x = 1"},
      {Language::Python, true, "function with default and f-string",
       R"(import os


def list_files(root, ext=".txt"):
    """Return matching file names."""
    out = []
    for name in os.listdir(root):
        if name.endswith(ext):
            out.append(f"{root}/{name}")
    return out
)"},
      {Language::Python, true, "class, decorator and comprehension",
       R"(class Counter:
    def __init__(self, items):
        self.items = list(items)

    @property
    def evens(self):
        return [i for i in self.items if i % 2 == 0]

    def __len__(self):
        return len(self.items)
)"},
      {Language::Python, true, "try, with and lambda",
       R"(import json

try:
    with open("data.json") as fh:
        data = json.load(fh)
except (IOError, ValueError) as err:
    data = {}
finally:
    pass

key = lambda kv: kv[1]
print(sorted(data.items(), key=key)[:3])
)"},
      {Language::Python, true, "generator and dict literal",
       R"(def pairs(n):
    for i in range(n):
        yield i, i * i

table = {k: v for k, v in pairs(4)}
total = sum(v for _, v in table.items()) if table else 0
)"},
      {Language::Python, false, "Python 2 print statement", "print \"hello\""},
      {Language::Python, false, "bad indentation",
       "def f():\nreturn 1\n"},
      {Language::Python, false, "missing colon", "for i in range(3)\n    print(i)\n"},
      {Language::Python, false, "interactive prompt", ">>> x = 1\n>>> x + 1\n2"},
      {Language::Python, false, "traceback",
       "Traceback (most recent call last):\n  File \"main.py\", line 3, in <module>\n    foo()\nNameError: name 'foo' is not defined"},
  };
  return suite;
}
