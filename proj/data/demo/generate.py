#!/usr/bin/env python3
"""Regenerates the demo corpus in this directory.

Output is deterministic: rerunning produces identical files.
"""

import json
import random
from datetime import datetime, timedelta, timezone
from pathlib import Path

HERE = Path(__file__).resolve().parent

CATEGORIES = [
    ("tm-travel", "Travel", "Flight search, flight booking and reservation records"),
    ("tm-payment", "Payment", "Card payment, invoice and currency handling for purchases"),
    ("tm-messaging", "Messaging", "Email and text message notification delivery"),
]

BUSINESSES = [
    ("b-skyways", "Skyways Data"),
    ("b-paynet", "PayNet Ltd"),
    ("b-notify", "NotifyHub"),
]

STRING, FLOAT, DOUBLE, DATE, INT = "xsd:string", "xsd:float", "xsd:double", "xsd:date", "xsd:int"
BOOKING_RECORD = "tns:BookingRecord"

# key, name, business, category, description, style, operations, cost, security
# operation: (name, documentation, inputs, outputs); params are (name, type)
SERVICES = [
    ("s01", "FlightSearchPro", "b-skyways", "tm-travel",
     "Search flights between two airports on a departure date and return the flight and its fare",
     "document",
     [("SearchFlights", "Search available flights for a route and date",
       [("origin", STRING), ("destination", STRING), ("departureDate", DATE)],
       [("flightNumber", STRING), ("fare", FLOAT)])],
     0.02, ("tls", "token")),
    ("s02", "SkyFinder", "b-skyways", "tm-travel",
     "Find flights for a route and date with airline details",
     "rpc",
     [("FindFlights", "Find flights and report the airline",
       [("origin", STRING), ("destination", STRING), ("departureDate", DATE)],
       [("flightNumber", STRING), ("fare", FLOAT), ("airline", STRING)])],
     0.01, ("tls", "none")),
    ("s03", "FlightBooking", "b-skyways", "tm-travel",
     "Book a ticket on a flight for a passenger",
     "document",
     [("BookTicket", "Book a flight ticket and return the reservation code",
       [("flightNumber", STRING), ("passengerName", STRING)],
       [("reservationCode", STRING)])],
     0.10, ("tls", "token")),
    ("s04", "AirReserve", "b-skyways", "tm-travel",
     "Reserve a seat in a chosen class on a flight",
     "document",
     [("ReserveSeat", "Reserve a flight seat for a passenger in a seat class",
       [("flightNumber", STRING), ("passengerName", STRING), ("seatClass", STRING)],
       [("reservationCode", STRING)])],
     0.08, ("tls", "basic")),
    ("s05", "BookingArchive", "b-skyways", "tm-travel",
     "Look up stored booking records by reservation code",
     "document",
     [("GetBooking", "Fetch the booking record for a reservation code",
       [("reservationCode", STRING)],
       [("bookingRecord", BOOKING_RECORD)])],
     0.01, ("tls", "token")),
    ("s06", "HotelLookup", "b-skyways", "tm-travel",
     "Find hotel rooms near an airport",
     "rpc",
     [("FindHotels", "Find hotel rooms for a city and date",
       [("city", STRING), ("checkInDate", DATE)],
       [("hotelName", STRING), ("nightlyRate", FLOAT)])],
     0.02, ("none", "none")),
    ("s07", "CardPay", "b-paynet", "tm-payment",
     "Charge a payment card for an amount",
     "document",
     [("ChargeCard", "Charge the card and return the payment id",
       [("cardNumber", STRING), ("amount", DOUBLE)],
       [("paymentId", STRING)])],
     0.30, ("tls", "token")),
    ("s08", "QuickPay", "b-paynet", "tm-payment",
     "Card payment with a hosted receipt",
     "rpc",
     [("Pay", "Pay a price with a card and publish a receipt",
       [("cardNumber", STRING), ("price", FLOAT)],
       [("paymentId", STRING), ("receiptUrl", STRING)])],
     0.25, ("tls", "basic")),
    ("s09", "InvoiceGen", "b-paynet", "tm-payment",
     "Create an invoice from a booking record",
     "document",
     [("CreateInvoice", "Create the invoice for a booking record",
       [("bookingRecord", BOOKING_RECORD)],
       [("invoiceNumber", STRING)])],
     0.05, ("tls", "token")),
    ("s10", "CurrencyConvert", "b-paynet", "tm-payment",
     "Convert a payment amount between currencies",
     "rpc",
     [("Convert", "Convert an amount to a target currency",
       [("amount", DOUBLE), ("targetCurrency", STRING)],
       [("convertedAmount", DOUBLE)])],
     0.01, ("none", "none")),
    ("s11", "MailNotify", "b-notify", "tm-messaging",
     "Send an email notification about a booking",
     "document",
     [("SendEmail", "Send a notification email for a reservation",
       [("emailAddress", STRING), ("reservationCode", STRING)],
       [("messageId", STRING)])],
     0.01, ("tls", "token")),
    ("s12", "SmsGateway", "b-notify", "tm-messaging",
     "Send a text message notification to a phone",
     "rpc",
     [("SendSms", "Send a text message to a phone number",
       [("phoneNumber", STRING), ("text", STRING)],
       [("messageId", STRING)])],
     0.02, ("tls", "basic")),
]

# serviceKey -> (mean latency ms, latency spread, success probability, calls)
BEHAVIOUR = {
    "s01": (180, 40, 0.99, 40), "s02": (120, 30, 0.95, 40), "s03": (300, 60, 0.98, 30),
    "s04": (260, 50, 0.97, 30), "s05": (60, 15, 0.995, 30), "s06": (200, 40, 0.9, 20),
    "s07": (350, 80, 0.99, 40), "s08": (250, 50, 0.96, 40), "s09": (90, 20, 0.99, 30),
    "s10": (40, 10, 0.99, 20), "s11": (150, 30, 0.98, 30), "s12": (100, 20, 0.93, 30),
}


def wsdl_document(key, name, style, operations):
    tns = f"urn:demo:{name.lower()}"
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<wsdl:definitions name="{name}" targetNamespace="{tns}"',
        f'    xmlns:wsdl="http://schemas.xmlsoap.org/wsdl/" xmlns:soap="http://schemas.xmlsoap.org/wsdl/soap/"',
        f'    xmlns:xsd="http://www.w3.org/2001/XMLSchema" xmlns:tns="{tns}">',
        "  <wsdl:types>",
        f'    <xsd:schema targetNamespace="{tns}">',
    ]
    uses_record = any(t == BOOKING_RECORD for op in operations for t in [p[1] for p in op[2] + op[3]])
    if uses_record:
        out += [
            '      <xsd:complexType name="BookingRecord">',
            "        <xsd:sequence>",
            '          <xsd:element name="reservationCode" type="xsd:string"/>',
            '          <xsd:element name="passengerName" type="xsd:string"/>',
            '          <xsd:element name="fare" type="xsd:float"/>',
            "        </xsd:sequence>",
            "      </xsd:complexType>",
        ]
    if style == "document":
        for op_name, _, inputs, outputs in operations:
            for suffix, params in (("", inputs), ("Response", outputs)):
                out.append(f'      <xsd:element name="{op_name}{suffix}">')
                out.append("        <xsd:complexType>")
                out.append("          <xsd:sequence>")
                for p, t in params:
                    out.append(f'            <xsd:element name="{p}" type="{t}"/>')
                out.append("          </xsd:sequence>")
                out.append("        </xsd:complexType>")
                out.append("      </xsd:element>")
    out += ["    </xsd:schema>", "  </wsdl:types>"]

    for op_name, _, inputs, outputs in operations:
        for suffix, params in (("Request", inputs), ("Response", outputs)):
            out.append(f'  <wsdl:message name="{op_name}{suffix}">')
            if style == "document":
                element = op_name if suffix == "Request" else op_name + "Response"
                out.append(f'    <wsdl:part name="parameters" element="tns:{element}"/>')
            else:
                for p, t in params:
                    out.append(f'    <wsdl:part name="{p}" type="{t}"/>')
            out.append("  </wsdl:message>")

    out.append(f'  <wsdl:portType name="{name}PortType">')
    for op_name, doc, _, _ in operations:
        out += [
            f'    <wsdl:operation name="{op_name}">',
            f"      <wsdl:documentation>{doc}</wsdl:documentation>",
            f'      <wsdl:input message="tns:{op_name}Request"/>',
            f'      <wsdl:output message="tns:{op_name}Response"/>',
            "    </wsdl:operation>",
        ]
    out.append("  </wsdl:portType>")

    use = "literal"
    out += [
        f'  <wsdl:binding name="{name}Binding" type="tns:{name}PortType">',
        f'    <soap:binding style="{style}" transport="http://schemas.xmlsoap.org/soap/http"/>',
    ]
    for op_name, _, _, _ in operations:
        out += [
            f'    <wsdl:operation name="{op_name}">',
            f'      <soap:operation soapAction="{tns}#{op_name}"/>',
            f'      <wsdl:input><soap:body use="{use}"/></wsdl:input>',
            f'      <wsdl:output><soap:body use="{use}"/></wsdl:output>',
            "    </wsdl:operation>",
        ]
    out += [
        "  </wsdl:binding>",
        f'  <wsdl:service name="{name}">',
        f'    <wsdl:port name="{name}Port" binding="tns:{name}Binding">',
        f'      <soap:address location="https://{name.lower()}.example.com/soap"/>',
        "    </wsdl:port>",
        "  </wsdl:service>",
        "</wsdl:definitions>",
        "",
    ]
    return "\n".join(out)


def manifest():
    return {
        "categories": [{"tModelKey": k, "name": n, "description": d} for k, n, d in CATEGORIES],
        "businessEntities": [{"businessKey": k, "businessName": n} for k, n in BUSINESSES],
        "services": [
            {
                "serviceKey": key,
                "businessKey": biz,
                "name": name,
                "description": desc,
                "categoryKey": cat,
                "wsdl": f"wsdl/{key}-{name.lower()}.wsdl",
                "security": {"transport": sec[0], "authentication": sec[1]},
                "cost": cost,
            }
            for key, name, biz, cat, desc, _, _, cost, sec in SERVICES
        ],
    }


def logs():
    rng = random.Random(20240917)
    start = datetime(2024, 9, 1, 8, 0, 0, tzinfo=timezone.utc)
    lines = []
    for key, name, *_rest in SERVICES:
        ops = next(s[6] for s in SERVICES if s[0] == key)
        mean, spread, p_ok, calls = BEHAVIOUR[key]
        t = start
        for i in range(calls):
            t += timedelta(seconds=rng.randint(5, 25), milliseconds=rng.randint(0, 999))
            duration = max(5.0, round(rng.gauss(mean, spread), 1))
            ok = rng.random() < p_ok
            lines.append({
                "ts": t.strftime("%Y-%m-%dT%H:%M:%S.") + f"{t.microsecond // 1000:03d}Z",
                "serviceKey": key,
                "operation": ops[0][0],
                "duration_ms": duration,
                "success": ok,
            })
    lines.sort(key=lambda l: (l["ts"], l["serviceKey"]))
    text = "\n".join(json.dumps(l, sort_keys=True) for l in lines) + "\n"
    # One malformed line, reported as skipped on ingest.
    return text + "this line is not JSON\n"


BPMN = """<?xml version="1.0" encoding="UTF-8"?>
<bpmn:definitions xmlns:bpmn="http://www.omg.org/spec/BPMN/20100524/MODEL"
                  id="defs-trip" targetNamespace="urn:demo:trip">
  <bpmn:process id="trip-booking" name="Trip booking" isExecutable="false">
    <bpmn:startEvent id="start" name="Trip requested"/>
    <bpmn:serviceTask id="T1" name="Search flights">
      <bpmn:documentation>Search flights for the requested route</bpmn:documentation>
    </bpmn:serviceTask>
    <bpmn:serviceTask id="T2" name="Book ticket"/>
    <bpmn:serviceTask id="T3" name="Take payment">
    </bpmn:serviceTask>
    <bpmn:parallelGateway id="split" name="After payment"/>
    <bpmn:serviceTask id="T4" name="Issue invoice">
      <bpmn:extensionElements>
      </bpmn:extensionElements>
    </bpmn:serviceTask>
    <bpmn:serviceTask id="T5" name="Notify passenger"/>
    <bpmn:parallelGateway id="join"/>
    <bpmn:endEvent id="end" name="Trip booked"/>
    <bpmn:sequenceFlow id="f1" sourceRef="start" targetRef="T1"/>
    <bpmn:sequenceFlow id="f2" sourceRef="T1" targetRef="T2"/>
    <bpmn:sequenceFlow id="f3" sourceRef="T2" targetRef="T3"/>
    <bpmn:sequenceFlow id="f4" sourceRef="T3" targetRef="split"/>
    <bpmn:sequenceFlow id="f5" sourceRef="split" targetRef="T4"/>
    <bpmn:sequenceFlow id="f6" sourceRef="split" targetRef="T5"/>
    <bpmn:sequenceFlow id="f7" sourceRef="T4" targetRef="join"/>
    <bpmn:sequenceFlow id="f8" sourceRef="T5" targetRef="join"/>
    <bpmn:sequenceFlow id="f9" sourceRef="join" targetRef="end"/>
  </bpmn:process>
</bpmn:definitions>
"""

SPECS = {
    "processId": "trip-booking",
    "tasks": [
        {
            "taskId": "T1",
            "objective": "Search available flights from origin to destination on the departure date",
            "inputs": [{"name": "origin", "type": "string"}, {"name": "destination", "type": "string"},
                       {"name": "departureDate", "type": "date"}],
            "outputs": [{"name": "flightNumber", "type": "string"}, {"name": "fare", "type": "float"}],
            "weights": {"latency_ms": 0.4, "reliability": 0.6},
        },
        {
            "taskId": "T2",
            "objective": "Book a flight ticket for the passenger",
            "inputs": [{"name": "flightNumber", "type": "string"}, {"name": "passengerName", "type": "string"}],
            "outputs": [{"name": "reservationCode", "type": "string"}],
            "weights": {"latency_ms": 0.3, "reliability": 0.5, "cost": 0.2},
        },
        {
            "taskId": "T3",
            "objective": "Charge the payment card for the ticket price",
            "inputs": [{"name": "cardNumber", "type": "string"}, {"name": "amount", "type": "float"}],
            "outputs": [{"name": "paymentId", "type": "string"}],
            "weights": {"reliability": 0.7, "cost": 0.3},
        },
        {
            "taskId": "T4",
            "objective": "Create the invoice for the booking",
            "inputs": [{"name": "reservationCode", "type": "string"}],
            "outputs": [{"name": "invoiceNumber", "type": "string"}],
            "weights": {"latency_ms": 0.5, "cost": 0.5},
        },
        {
            "taskId": "T5",
            "objective": "Send an email notification to the passenger about the booking",
            "inputs": [{"name": "emailAddress", "type": "string"}, {"name": "reservationCode", "type": "string"}],
            "outputs": [{"name": "messageId", "type": "string"}],
        },
    ],
}

LEXICON = """# Demo synonym lexicon: one synset per line.
price|amount|fare
reservation|booking
book|reserve
search|find|look up
email|mail
notification|notify|alert
invoice|bill
card|credit card
flight|air travel
>hypernym:travel
"""


def main():
    (HERE / "wsdl").mkdir(exist_ok=True)
    for key, name, _, _, _, style, ops, _, _ in SERVICES:
        (HERE / "wsdl" / f"{key}-{name.lower()}.wsdl").write_text(wsdl_document(key, name, style, ops))
    (HERE / "manifest.json").write_text(json.dumps(manifest(), indent=2) + "\n")
    (HERE / "logs.jsonl").write_text(logs())
    (HERE / "process.bpmn").write_text(BPMN)
    (HERE / "specs.json").write_text(json.dumps(SPECS, indent=2) + "\n")
    (HERE / "lexicon.txt").write_text(LEXICON)


if __name__ == "__main__":
    main()
