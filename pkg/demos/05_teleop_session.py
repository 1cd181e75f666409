"""The teleop wire protocol, driven without a network.

Feeds control frames straight into a session and prints every frame that
would cross the wire, including the watchdog stop after the operator
'releases the key' and says nothing for 500 ms.
"""

from navbot import protocol
from navbot.maps import open_map
from navbot.session import TeleopSession
from navbot.simworld import WorldState

session = TeleopSession(WorldState.from_map(open_map(), seed=0))


def send(line_dict):
    line = protocol.encode(line_dict)
    print(f">> {line}", end="")
    for reply in session.handle_line(line):
        print(f"<< {protocol.encode(reply)}", end="")


send({"type": "set_mode", "mode": "manual"})
send({"type": "drive", "dir": "forward"})
for tick in range(8):  # 800 ms: the 500 ms watchdog fires along the way
    for msg in session.tick():
        frame = msg["frame"]
        print(f"   t={frame['timestamp_ms']:4} ms  x={frame['x']:7.1f}  "
              f"v={frame['v_left']:.0f} mm/s  mode={frame['mode']}")
send({"type": "drive", "dir": "stop"})
send({"type": "set_mode", "mode": "avoidance"})
send({"type": "drive", "dir": "forward"})  # refused outside manual mode
