"""Parse each SVG with the standard XML parser and check the expected path count."""
import sys
import xml.etree.ElementTree as ET

SVG = "{http://www.w3.org/2000/svg}"

for arg in sys.argv[1:]:
    path, expected = arg.split("=")
    root = ET.parse(path).getroot()
    assert root.tag == SVG + "svg", f"{path}: root is {root.tag}"
    assert root.get("viewBox") == "0 0 800 600", f"{path}: viewBox {root.get('viewBox')}"
    paths = root.findall(f".//{SVG}path")
    assert len(paths) == int(expected), f"{path}: {len(paths)} paths, expected {expected}"
    print(f"{path}: ok ({len(paths)} paths)")
