class House:
    house: Unique[Domain[int, range(1, 5)]]
    name: Unique[Domain[str, "Alice", "Eric", "Arnold", "Peter"]]
    occupation: Unique[Domain[str, "artist", "engineer", "teacher", "doctor"]]
    book: Unique[Domain[str, "fantasy", "science fiction", "mystery", "romance"]]
    phone: Unique[Domain[str, "google pixel 6", "iphone 13", "oneplus 9", "samsung galaxy s21"]]

class PuzzleSolution:
    houses: list[House, 4]

def validate(solution: PuzzleSolution) -> None:
    # 1: engineer sits immediately left of the galaxy owner
    engineer = nondet(solution.houses)
    assume(engineer.occupation == "engineer")
    galaxy = nondet(solution.houses)
    assume(galaxy.phone == "samsung galaxy s21")
    assert engineer.house == galaxy.house - 1

    # 2
    fantasy = nondet(solution.houses)
    assume(fantasy.book == "fantasy")
    assert fantasy.house == 2

    # 3
    alice = nondet(solution.houses)
    assume(alice.name == "Alice")
    assert alice.house != 2

    # 4
    eric = nondet(solution.houses)
    assume(eric.name == "Eric")
    assert eric.occupation == "teacher"

    # 5
    assert galaxy.book == "fantasy"

    # 6
    iphone = nondet(solution.houses)
    assume(iphone.phone == "iphone 13")
    assert iphone.book == "science fiction"

    # 7
    scifi = nondet(solution.houses)
    assume(scifi.book == "science fiction")
    oneplus = nondet(solution.houses)
    assume(oneplus.phone == "oneplus 9")
    assert scifi.house < oneplus.house

    # 8
    assert oneplus.name == "Arnold"

    # 9
    doctor = nondet(solution.houses)
    assume(doctor.occupation == "doctor")
    assert doctor.book == "mystery"

    # 10
    assert iphone.occupation == "teacher"
